#include "dopt/edoa.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dopt {

namespace {

std::map<std::string, EdoaFactory>& registry() {
  static std::map<std::string, EdoaFactory> instance;
  return instance;
}

void ensure_builtins();

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) {
    throw std::invalid_argument("invalid value '" + value + "' for " + key);
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    throw std::invalid_argument("expected integer for " + key);
  }
  return i;
}

}  // namespace

void EdoaConfig::apply_override(const std::string& raw_key,
                                const std::string& value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '-', '_');

  if (key == "subpop_count") {
    subpop_count = parse_int(key, value);
  } else if (key == "neutral_count") {
    neutral_count = parse_int(key, value);
  } else if (key == "quantum_count") {
    quantum_count = parse_int(key, value);
  } else if (key == "de_count") {
    de_count = parse_int(key, value);
  } else if (key == "brownian_count") {
    brownian_count = parse_int(key, value);
  } else if (key == "swarm_size") {
    swarm_size = parse_int(key, value);
  } else if (key == "restart_fraction") {
    restart_fraction = parse_double(key, value);
  } else if (key == "max_free_swarms") {
    max_free_swarms = parse_int(key, value);
  } else if (key == "chi") {
    pso.chi = parse_double(key, value);
  } else if (key == "c1") {
    pso.c1 = parse_double(key, value);
  } else if (key == "c2") {
    pso.c2 = parse_double(key, value);
  } else if (key == "de_weight" || key == "f") {
    de.weight = parse_double(key, value);
  } else if (key == "de_crossover" || key == "cr") {
    de.crossover = parse_double(key, value);
  } else if (key == "de_strategy") {
    de.strategy = de_strategy_from_string(value);
    de_strategy_overridden = true;
  } else if (key == "brownian_sigma") {
    brownian_sigma = parse_double(key, value);
  } else if (key == "shift_estimate_initial") {
    shift_estimate_initial = parse_double(key, value);
  } else {
    throw std::invalid_argument("unknown algorithm parameter '" + raw_key +
                                "'");
  }

  if (restart_fraction < 0.0 || restart_fraction > 1.0) {
    throw std::invalid_argument("restart_fraction must lie in [0, 1]");
  }
  if (de.crossover < 0.0 || de.crossover > 1.0) {
    throw std::invalid_argument("de_crossover must lie in [0, 1]");
  }
  if (de.weight <= 0.0) {
    throw std::invalid_argument("de_weight must be positive");
  }
}

void register_edoa(const std::string& name, EdoaFactory factory) {
  registry()[name] = std::move(factory);
}

bool edoa_registered(const std::string& name) {
  ensure_builtins();
  return registry().count(name) > 0;
}

std::vector<std::string> edoa_names() {
  ensure_builtins();
  std::vector<std::string> names;
  names.reserve(registry().size());
  for (const auto& [name, factory] : registry()) names.push_back(name);
  return names;
}

std::unique_ptr<Edoa> make_edoa(const std::string& name,
                                const EdoaConfig& config,
                                RandomStream stream) {
  ensure_builtins();
  auto it = registry().find(name);
  if (it == registry().end()) {
    std::ostringstream msg;
    msg << "unknown algorithm '" << name << "' (valid:";
    for (const std::string& n : edoa_names()) msg << ' ' << n;
    msg << ')';
    throw std::invalid_argument(msg.str());
  }
  return it->second(config, std::move(stream));
}

// Defined in algorithms.cpp.
void register_builtin_edoas();

namespace {
void ensure_builtins() {
  static const bool once = [] {
    register_builtin_edoas();
    return true;
  }();
  (void)once;
}
}  // namespace

}  // namespace dopt
