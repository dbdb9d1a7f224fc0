#pragma once

#include "dopt/random.hpp"
#include "dopt/types.hpp"

#include <filesystem>
#include <utility>

namespace dopt {

/// The full precomputed sequence of stationary landscapes for one problem
/// instance. Immutable after generation; safe to share across runs.
struct EnvironmentSequence {
  ProblemSpec spec;
  std::vector<EnvironmentState> states;  // size spec.environment_count

  const EnvironmentState& state(int env_index) const {
    return states[static_cast<std::size_t>(env_index - 1)];
  }
};

/// Generate environment 1 with every attribute uniform in its admissible
/// range and centers uniform in bounds, then roll the dynamics forward for
/// environments 2..T. Pure function of (spec, stream state).
EnvironmentSequence generate_sequence(const ProblemSpec& spec,
                                      RandomStream& stream);

/// One environmental change: centers shift by `shift_severity` along a fresh
/// uniform direction, every scalar attribute takes a Gaussian step scaled by
/// its severity, and out-of-range values are mirrored off the violated bound.
/// GMPB rotations are rebuilt from the walked angles.
EnvironmentState apply_dynamics(const EnvironmentState& state,
                                const ProblemSpec& spec, RandomStream& stream);

/// Conical peaks: max over k of h_k - w_k * ||x - c_k||.
double mpb_fitness(const Vector& x, const EnvironmentState& state);

/// Irregularity transform applied per rotated coordinate. Identity at tau=0.
double gmpb_transform(double y, double tau, const Eigen::Vector4d& eta);

/// max over k of h_k - sqrt(sum_j w_kj^2 * transform(R_k (x - c_k))_j^2).
double gmpb_fitness(const Vector& x, const EnvironmentState& state);

/// Baseline dispatch on state.benchmark.
double baseline_fitness(const Vector& x, const EnvironmentState& state);

/// Value of peak k alone at x (same baseline family as the state).
double peak_value(const Vector& x, const EnvironmentState& state, int k);

/// Orthonormal matrix composed of Givens rotations by `angle` in the planes
/// of a random disjoint pairing of dimensions. Identity for d = 1.
Matrix rotation_from_angle(double angle, int d, RandomStream& stream);

/// (max height, center of the argmax peak). Every peak attains exactly its
/// height at its own center, so this is the global optimum for both baselines.
std::pair<double, Vector> optimum_of(const EnvironmentState& state);

/// Order-insensitive to nothing: hashes the canonical serialization of every
/// state, so equal digests mean bit-identical sequences.
std::uint64_t sequence_digest(const EnvironmentSequence& sequence);

/// Debug/golden-test export: spec echo plus per-environment arrays.
void write_sequence_json(const EnvironmentSequence& sequence,
                         const std::filesystem::path& path);

}  // namespace dopt
