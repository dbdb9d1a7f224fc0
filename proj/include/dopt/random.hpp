#pragma once

#include "dopt/types.hpp"

#include <cstdint>
#include <random>

namespace dopt {

/// Deterministic random stream. All draws go through explicit transforms of
/// the raw engine output so that sequences depend only on the seed, not on
/// the standard library's distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; the spare value is cached.
  double gaussian();

  /// Uniform integer in {0, ..., n-1}; n >= 1.
  int uniform_int(int n);

  /// Vector with each coordinate uniform in [lo, hi).
  Vector uniform_vector(int d, double lo, double hi);

  /// Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// The two per-experiment streams. Benchmark draws and algorithm draws never
/// share generator state.
struct RandomStreams {
  RandomStream benchmark;
  RandomStream algorithm;

  RandomStreams(std::uint64_t experiment_seed, std::uint64_t run_index)
      : benchmark(experiment_seed), algorithm(experiment_seed ^ run_index) {}
};

/// Direction uniform on the unit sphere, norm 1 within 1e-12.
Vector unit_random_vector(RandomStream& stream, int d);

/// Point uniform inside the d-ball of radius `radius` around `center`.
Vector uniform_ball_sample(RandomStream& stream, const Vector& center,
                           double radius);

}  // namespace dopt
