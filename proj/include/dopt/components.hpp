#pragma once

#include "dopt/evaluation.hpp"
#include "dopt/random.hpp"
#include "dopt/types.hpp"

#include <functional>

namespace dopt {

/// Constriction-factor velocity update coefficients.
struct PsoParams {
  double chi = 0.729843788;
  double c1 = 2.05;
  double c2 = 2.05;
};

/// chi = 2 / |2 - phi - sqrt(phi^2 - 4 phi)| with phi = c1 + c2 > 4.
double constriction_coefficient(double c1, double c2);

enum class DeStrategy { Rand2Bin, Best2Bin };

struct DeParams {
  double weight = 0.5;     // F
  double crossover = 0.9;  // CR
  DeStrategy strategy = DeStrategy::Rand2Bin;
};

const char* to_string(DeStrategy s);
DeStrategy de_strategy_from_string(const std::string& name);

/// Smallest sub-population size the strategy's donor selection supports
/// (distinct donors plus the target).
int de_min_population(DeStrategy s);

/// Online estimate of how far peaks move per change: the mean of observed
/// tracker relocations, or the configured initial value before the first
/// observation.
class ShiftEstimator {
 public:
  explicit ShiftEstimator(double initial = 1.0) : initial_(initial) {}

  double estimate() const;
  void add_observation(double distance);
  const std::vector<double>& observations() const { return observations_; }

 private:
  double initial_;
  std::vector<double> observations_;
};

/// Append relocation distances and return the updated estimate.
double shift_update(ShiftEstimator& estimator,
                    std::span<const double> relocations);

/// Callback used by exclusion / anti-convergence to rebuild a sub-population
/// uniformly at random in bounds with cleared memories. Supplied by the
/// algorithm since reinitialization costs evaluations.
using ReinitFn = std::function<void(SubPopulation&)>;

/// One constriction-PSO move of every neutral member: velocity update with
/// fresh per-coordinate uniforms, absorb bounds, evaluate, greedy
/// pbest/gbest update.
void pso_step(SubPopulation& sp, const PsoParams& params, const Bounds& bounds,
              RandomStream& stream, ProblemView& problem);

/// Resample every quantum member uniformly inside the ball of radius
/// `cloud_radius` around gbest.
void quantum_step(SubPopulation& sp, double cloud_radius, const Bounds& bounds,
                  RandomStream& stream, ProblemView& problem);

/// One DE generation over the plain members; donors are drawn from the whole
/// sub-population. Binomial crossover with a forced coordinate, greedy
/// selection. Throws std::invalid_argument when the population is too small
/// for the strategy.
void de_step(SubPopulation& sp, const DeParams& params, const Bounds& bounds,
             RandomStream& stream, ProblemView& problem);

/// Resample every brownian member at gbest + N(0, sigma^2) per coordinate.
void brownian_step(SubPopulation& sp, double sigma, const Bounds& bounds,
                   RandomStream& stream, ProblemView& problem);

/// r_excl = 0.5 * (hi - lo) / m^(1/d).
double exclusion_radius(const Bounds& bounds, int subpop_count, int dimension);

/// True iff the maximum pairwise distance among search members is below
/// `radius`.
bool is_converged(const SubPopulation& sp, double radius);

/// For every pair of sub-populations whose bests lie within `radius`, mark
/// the one with the lower gbest value (ties: the lower id survives), then
/// reinitialize all marked ones. Marking happens on a snapshot of the
/// incoming state, so the survivor set is order-independent. Returns the ids
/// of the reinitialized sub-populations.
std::vector<int> exclusion(std::vector<SubPopulation>& subpops, double radius,
                           const ReinitFn& reinit);

/// When every sub-population has converged, reinitialize the worst one.
void anti_convergence(std::vector<SubPopulation>& subpops, double radius,
                      const ReinitFn& reinit);

// DE mutant construction, exposed for direct verification.
Vector rand2_mutant(const Vector& x1, const Vector& x2, const Vector& x3,
                    const Vector& x4, const Vector& x5, double weight);
Vector best2_mutant(const Vector& best, const Vector& x1, const Vector& x2,
                    const Vector& x3, const Vector& x4, double weight);

}  // namespace dopt
