#include "dopt/types.hpp"

#include <algorithm>
#include <string>

namespace dopt {

const char* to_string(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::MPB:
      return "MPB";
    case BenchmarkId::GMPB:
      return "GMPB";
  }
  return "?";
}

BenchmarkId benchmark_from_string(const std::string& name) {
  if (name == "MPB") return BenchmarkId::MPB;
  if (name == "GMPB") return BenchmarkId::GMPB;
  throw std::invalid_argument("unknown benchmark '" + name +
                              "' (valid: MPB, GMPB)");
}

void ProblemSpec::validate() const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("problem spec: " + msg);
  };
  if (dimension < 1) fail("dimension must be >= 1");
  if (peak_count < 1) fail("peak_count must be >= 1");
  if (change_frequency < 1) fail("change_frequency must be >= 1");
  if (environment_count < 1) fail("environment_count must be >= 1");
  if (shift_severity < 0.0) fail("shift_severity must be >= 0");
  if (!(bounds.lo < bounds.hi)) fail("bounds.lo must be < bounds.hi");
  if (min_height > max_height) fail("min_height > max_height");
  if (min_width > max_width) fail("min_width > max_width");
  if (min_tau > max_tau) fail("min_tau > max_tau");
  if (min_eta > max_eta) fail("min_eta > max_eta");
  if (min_angle > max_angle) fail("min_angle > max_angle");
  for (double s : {height_severity, width_severity, tau_severity, eta_severity,
                   angle_severity}) {
    if (s < 0.0) fail("severities must be >= 0");
  }
}

void SubPopulation::refresh_gbest() {
  for (const Individual& m : members) {
    if (m.pbest_value > gbest_value) {
      gbest_value = m.pbest_value;
      gbest_position = m.pbest_position;
    }
  }
}

double diameter(const SubPopulation& sp) {
  double max_dist = 0.0;
  const auto& ms = sp.members;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i].role != Role::Neutral && ms[i].role != Role::Plain) continue;
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (ms[j].role != Role::Neutral && ms[j].role != Role::Plain) continue;
      max_dist =
          std::max(max_dist, (ms[i].position - ms[j].position).norm());
    }
  }
  return max_dist;
}

}  // namespace dopt
