#include "dopt/benchmark.hpp"

#include "dopt/bounds.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>

namespace dopt {

namespace {

/// Gaussian random walk mirrored into [lo, hi].
double walk(double value, double severity, double lo, double hi,
            RandomStream& stream) {
  return reflect_into_range(value + severity * stream.gaussian(), lo, hi);
}

EnvironmentState initial_state(const ProblemSpec& spec, RandomStream& stream) {
  const int m = spec.peak_count;
  const int d = spec.dimension;
  const bool gmpb = spec.benchmark == BenchmarkId::GMPB;

  EnvironmentState s;
  s.env_index = 1;
  s.benchmark = spec.benchmark;

  s.centers.resize(m, d);
  for (int k = 0; k < m; ++k) {
    s.centers.row(k) =
        stream.uniform_vector(d, spec.bounds.lo, spec.bounds.hi).transpose();
  }

  s.heights.resize(m);
  for (int k = 0; k < m; ++k) {
    s.heights[k] = stream.uniform(spec.min_height, spec.max_height);
  }

  // MPB peaks are symmetric cones with one slope; GMPB widths vary per axis.
  s.widths.resize(m, gmpb ? d : 1);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < s.widths.cols(); ++j) {
      s.widths(k, j) = stream.uniform(spec.min_width, spec.max_width);
    }
  }

  if (gmpb) {
    s.taus.resize(m);
    for (int k = 0; k < m; ++k) {
      s.taus[k] = stream.uniform(spec.min_tau, spec.max_tau);
    }
    s.etas.resize(m, 4);
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < 4; ++j) {
        s.etas(k, j) = stream.uniform(spec.min_eta, spec.max_eta);
      }
    }
    s.angles.resize(m);
    for (int k = 0; k < m; ++k) {
      s.angles[k] = stream.uniform(spec.min_angle, spec.max_angle);
    }
    s.rotations.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      s.rotations.push_back(rotation_from_angle(s.angles[k], d, stream));
    }
  }

  auto [value, position] = optimum_of(s);
  s.optimum_value = value;
  s.optimum_position = position;
  return s;
}

}  // namespace

EnvironmentSequence generate_sequence(const ProblemSpec& spec,
                                      RandomStream& stream) {
  spec.validate();
  EnvironmentSequence seq;
  seq.spec = spec;
  seq.states.reserve(static_cast<std::size_t>(spec.environment_count));
  seq.states.push_back(initial_state(spec, stream));
  for (int t = 2; t <= spec.environment_count; ++t) {
    seq.states.push_back(apply_dynamics(seq.states.back(), spec, stream));
  }
  return seq;
}

EnvironmentState apply_dynamics(const EnvironmentState& state,
                                const ProblemSpec& spec,
                                RandomStream& stream) {
  const int m = state.peak_count();
  const int d = state.dimension();
  const bool gmpb = state.benchmark == BenchmarkId::GMPB;

  EnvironmentState next = state;
  next.env_index = state.env_index + 1;

  // Uncorrelated center shifts: a fresh uniform direction per peak, scaled
  // by the shift severity and mirrored off the search bounds.
  for (int k = 0; k < m; ++k) {
    Vector c = next.centers.row(k).transpose();
    c += spec.shift_severity * unit_random_vector(stream, d);
    reflect_into_bounds(c, spec.bounds);
    next.centers.row(k) = c.transpose();
  }

  for (int k = 0; k < m; ++k) {
    next.heights[k] = walk(next.heights[k], spec.height_severity,
                           spec.min_height, spec.max_height, stream);
  }
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < next.widths.cols(); ++j) {
      next.widths(k, j) = walk(next.widths(k, j), spec.width_severity,
                               spec.min_width, spec.max_width, stream);
    }
  }

  if (gmpb) {
    for (int k = 0; k < m; ++k) {
      next.taus[k] = walk(next.taus[k], spec.tau_severity, spec.min_tau,
                          spec.max_tau, stream);
    }
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < 4; ++j) {
        next.etas(k, j) = walk(next.etas(k, j), spec.eta_severity,
                               spec.min_eta, spec.max_eta, stream);
      }
    }
    for (int k = 0; k < m; ++k) {
      next.angles[k] = walk(next.angles[k], spec.angle_severity,
                            spec.min_angle, spec.max_angle, stream);
    }
    // A zero angle severity means static variable interaction: keep the
    // existing rotation instead of redrawing its plane pairing.
    if (spec.angle_severity > 0.0) {
      for (int k = 0; k < m; ++k) {
        next.rotations[static_cast<std::size_t>(k)] =
            rotation_from_angle(next.angles[k], d, stream);
      }
    }
  }

  auto [value, position] = optimum_of(next);
  next.optimum_value = value;
  next.optimum_position = position;
  return next;
}

double mpb_fitness(const Vector& x, const EnvironmentState& state) {
  const int m = state.peak_count();
  double best = -std::numeric_limits<double>::infinity();
  Vector diff(state.dimension());
  for (int k = 0; k < m; ++k) {
    diff = x - state.centers.row(k).transpose();
    best = std::max(best, state.heights[k] - state.widths(k, 0) * diff.norm());
  }
  return best;
}

double gmpb_transform(double y, double tau, const Eigen::Vector4d& eta) {
  if (y == 0.0) return 0.0;
  if (y > 0.0) {
    const double ly = std::log(y);
    return std::exp(ly + tau * (std::sin(eta[0] * ly) + std::sin(eta[1] * ly)));
  }
  const double ly = std::log(-y);
  return -std::exp(ly + tau * (std::sin(eta[2] * ly) + std::sin(eta[3] * ly)));
}

double gmpb_fitness(const Vector& x, const EnvironmentState& state) {
  const int m = state.peak_count();
  const int d = state.dimension();
  double best = -std::numeric_limits<double>::infinity();
  Vector diff(d), y(d);
  for (int k = 0; k < m; ++k) {
    diff = x - state.centers.row(k).transpose();
    y.noalias() = state.rotations[static_cast<std::size_t>(k)] * diff;
    const Eigen::Vector4d eta = state.etas.row(k).transpose();
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
      const double t = gmpb_transform(y[j], state.taus[k], eta);
      const double wt = state.widths(k, j) * t;
      sum += wt * wt;
    }
    best = std::max(best, state.heights[k] - std::sqrt(sum));
  }
  return best;
}

double baseline_fitness(const Vector& x, const EnvironmentState& state) {
  return state.benchmark == BenchmarkId::GMPB ? gmpb_fitness(x, state)
                                              : mpb_fitness(x, state);
}

double peak_value(const Vector& x, const EnvironmentState& state, int k) {
  Vector diff = x - state.centers.row(k).transpose();
  if (state.benchmark == BenchmarkId::MPB) {
    return state.heights[k] - state.widths(k, 0) * diff.norm();
  }
  const int d = state.dimension();
  Vector y = state.rotations[static_cast<std::size_t>(k)] * diff;
  const Eigen::Vector4d eta = state.etas.row(k).transpose();
  double sum = 0.0;
  for (int j = 0; j < d; ++j) {
    const double t = gmpb_transform(y[j], state.taus[k], eta);
    const double wt = state.widths(k, j) * t;
    sum += wt * wt;
  }
  return state.heights[k] - std::sqrt(sum);
}

Matrix rotation_from_angle(double angle, int d, RandomStream& stream) {
  const std::vector<int> perm = stream.permutation(d);
  Matrix rot = Matrix::Identity(d, d);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  for (int l = 0; 2 * l + 1 < d; ++l) {
    const int i = perm[static_cast<std::size_t>(2 * l)];
    const int j = perm[static_cast<std::size_t>(2 * l + 1)];
    Matrix givens = Matrix::Identity(d, d);
    givens(i, i) = c;
    givens(j, j) = c;
    givens(i, j) = -s;
    givens(j, i) = s;
    rot = givens * rot;
  }
  return rot;
}

std::pair<double, Vector> optimum_of(const EnvironmentState& state) {
  int argmax = 0;
  for (int k = 1; k < state.peak_count(); ++k) {
    if (state.heights[k] > state.heights[argmax]) argmax = k;
  }
  return {state.heights[argmax], state.centers.row(argmax).transpose()};
}

namespace {

struct Fnv1a {
  std::uint64_t hash = 1469598103934665603ULL;

  void feed_bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash ^= p[i];
      hash *= 1099511628211ULL;
    }
  }
  void feed(double v) { feed_bytes(&v, sizeof v); }
  void feed(int v) { feed_bytes(&v, sizeof v); }
  void feed(const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) feed(m(r, c));
    }
  }
  void feed(const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) feed(v[i]);
  }
};

}  // namespace

std::uint64_t sequence_digest(const EnvironmentSequence& sequence) {
  Fnv1a h;
  for (const EnvironmentState& s : sequence.states) {
    h.feed(s.env_index);
    h.feed(s.centers);
    h.feed(s.heights);
    h.feed(s.widths);
    if (s.benchmark == BenchmarkId::GMPB) {
      h.feed(s.taus);
      h.feed(s.etas);
      h.feed(s.angles);
      for (const Matrix& r : s.rotations) h.feed(r);
    }
    h.feed(s.optimum_value);
    h.feed(s.optimum_position);
  }
  return h.hash;
}

namespace {

nlohmann::ordered_json to_json(const Matrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json to_json(const Vector& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

void write_sequence_json(const EnvironmentSequence& sequence,
                         const std::filesystem::path& path) {
  const ProblemSpec& spec = sequence.spec;
  nlohmann::ordered_json doc;
  doc["spec"] = {
      {"benchmark", to_string(spec.benchmark)},
      {"dimension", spec.dimension},
      {"peak_count", spec.peak_count},
      {"change_frequency", spec.change_frequency},
      {"shift_severity", spec.shift_severity},
      {"environment_count", spec.environment_count},
      {"lo", spec.bounds.lo},
      {"hi", spec.bounds.hi},
  };
  nlohmann::ordered_json envs = nlohmann::ordered_json::array();
  for (const EnvironmentState& s : sequence.states) {
    nlohmann::ordered_json e;
    e["env"] = s.env_index;
    e["centers"] = to_json(s.centers);
    e["heights"] = to_json(s.heights);
    e["widths"] = to_json(s.widths);
    if (s.benchmark == BenchmarkId::GMPB) {
      e["taus"] = to_json(s.taus);
      e["etas"] = to_json(s.etas);
      e["angles"] = to_json(s.angles);
      nlohmann::ordered_json rots = nlohmann::ordered_json::array();
      for (const Matrix& r : s.rotations) rots.push_back(to_json(r));
      e["rotations"] = std::move(rots);
    }
    e["optimum_value"] = s.optimum_value;
    e["optimum_position"] = to_json(s.optimum_position);
    envs.push_back(std::move(e));
  }
  doc["environments"] = std::move(envs);

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << doc.dump(2) << '\n';
}

}  // namespace dopt
