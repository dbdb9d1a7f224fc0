#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

enum class BenchmarkId { MPB, GMPB };

const char* to_string(BenchmarkId id);
BenchmarkId benchmark_from_string(const std::string& name);

/// Hyper-cubic search region: the same [lo, hi] interval on every axis.
struct Bounds {
  double lo = -50.0;
  double hi = 50.0;

  double range() const { return hi - lo; }
  bool contains(const Vector& x) const {
    return (x.array() >= lo).all() && (x.array() <= hi).all();
  }
};

/// Static configuration of a dynamic problem instance: geometry, dynamics
/// severities, and the admissible range of every peak attribute.
struct ProblemSpec {
  int dimension = 5;
  int peak_count = 10;
  int change_frequency = 5000;  // fitness evaluations per environment
  double shift_severity = 1.0;  // center relocation distance per change
  int environment_count = 100;
  BenchmarkId benchmark = BenchmarkId::GMPB;
  Bounds bounds{};

  double height_severity = 7.0;
  double min_height = 30.0, max_height = 70.0;
  double width_severity = 1.0;
  double min_width = 1.0, max_width = 12.0;
  double tau_severity = 0.05;
  double min_tau = 0.0, max_tau = 0.4;
  double eta_severity = 2.0;
  double min_eta = 10.0, max_eta = 25.0;
  double angle_severity = kPi / 9.0;
  double min_angle = -kPi, max_angle = kPi;

  std::int64_t max_evaluations() const {
    return static_cast<std::int64_t>(change_frequency) * environment_count;
  }

  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

/// One stationary landscape: per-peak attributes plus the known optimum.
/// `widths` has one column for MPB (isotropic cone slope) and `dimension`
/// columns for GMPB. `taus`, `etas`, `angles`, `rotations` are GMPB-only.
struct EnvironmentState {
  int env_index = 1;  // 1-based
  BenchmarkId benchmark = BenchmarkId::MPB;
  Matrix centers;               // peak_count x dimension
  Vector heights;               // peak_count
  Matrix widths;                // peak_count x (1 | dimension)
  Vector taus;                  // peak_count
  Matrix etas;                  // peak_count x 4
  Vector angles;                // peak_count
  std::vector<Matrix> rotations;  // peak_count orthonormal d x d matrices
  double optimum_value = 0.0;
  Vector optimum_position;

  int peak_count() const { return static_cast<int>(heights.size()); }
  int dimension() const { return static_cast<int>(centers.cols()); }
};

enum class Role { Neutral, Quantum, Brownian, Plain };

/// One candidate solution. Velocity is the zero vector for non-PSO roles.
struct Individual {
  Vector position;
  Vector velocity;
  Vector pbest_position;
  double pbest_value = -std::numeric_limits<double>::infinity();
  double current_value = -std::numeric_limits<double>::infinity();
  Role role = Role::Neutral;
};

/// A group of individuals sharing one best-known position.
struct SubPopulation {
  std::vector<Individual> members;
  Vector gbest_position;
  double gbest_value = -std::numeric_limits<double>::infinity();
  bool converged = false;
  bool is_free = false;            // AmQSO bookkeeping
  Vector last_change_gbest;        // gbest snapshot at the last (re)init or change
  bool has_change_snapshot = false;
  int id = 0;

  /// Re-seat gbest on the best member pbest if any exceeds it.
  void refresh_gbest();
};

/// Maximum pairwise distance between search members (neutral/plain roles).
double diameter(const SubPopulation& sp);

}  // namespace dopt
