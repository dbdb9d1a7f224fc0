#include "dopt/components.hpp"

#include "dopt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dopt {

double constriction_coefficient(double c1, double c2) {
  const double phi = c1 + c2;
  if (phi <= 4.0) {
    throw std::invalid_argument("constriction requires c1 + c2 > 4");
  }
  return 2.0 / std::abs(2.0 - phi - std::sqrt(phi * phi - 4.0 * phi));
}

const char* to_string(DeStrategy s) {
  return s == DeStrategy::Rand2Bin ? "rand/2/bin" : "best/2/bin";
}

DeStrategy de_strategy_from_string(const std::string& name) {
  if (name == "rand/2/bin" || name == "rand2bin") return DeStrategy::Rand2Bin;
  if (name == "best/2/bin" || name == "best2bin") return DeStrategy::Best2Bin;
  throw std::invalid_argument("unknown DE strategy '" + name +
                              "' (valid: rand/2/bin, best/2/bin)");
}

int de_min_population(DeStrategy s) {
  return s == DeStrategy::Rand2Bin ? 6 : 5;
}

double ShiftEstimator::estimate() const {
  if (observations_.empty()) return initial_;
  double sum = 0.0;
  for (double v : observations_) sum += v;
  return sum / static_cast<double>(observations_.size());
}

void ShiftEstimator::add_observation(double distance) {
  observations_.push_back(distance);
}

double shift_update(ShiftEstimator& estimator,
                    std::span<const double> relocations) {
  for (double d : relocations) estimator.add_observation(d);
  return estimator.estimate();
}

namespace {

void greedy_memory_update(SubPopulation& sp, Individual& m) {
  if (m.current_value > m.pbest_value) {
    m.pbest_value = m.current_value;
    m.pbest_position = m.position;
  }
  if (m.pbest_value > sp.gbest_value) {
    sp.gbest_value = m.pbest_value;
    sp.gbest_position = m.pbest_position;
  }
}

}  // namespace

void pso_step(SubPopulation& sp, const PsoParams& params, const Bounds& bounds,
              RandomStream& stream, ProblemView& problem) {
  const int d = static_cast<int>(sp.gbest_position.size());
  for (Individual& m : sp.members) {
    if (m.role != Role::Neutral) continue;
    for (int j = 0; j < d; ++j) {
      const double r1 = stream.uniform();
      const double r2 = stream.uniform();
      m.velocity[j] = params.chi *
                      (m.velocity[j] +
                       params.c1 * r1 * (m.pbest_position[j] - m.position[j]) +
                       params.c2 * r2 * (sp.gbest_position[j] - m.position[j]));
    }
    m.position += m.velocity;
    absorb_bounds(m.position, m.velocity, bounds);
    m.current_value = problem.evaluate(m.position);
    greedy_memory_update(sp, m);
  }
}

void quantum_step(SubPopulation& sp, double cloud_radius, const Bounds& bounds,
                  RandomStream& stream, ProblemView& problem) {
  for (Individual& m : sp.members) {
    if (m.role != Role::Quantum) continue;
    m.position = uniform_ball_sample(stream, sp.gbest_position, cloud_radius);
    m.velocity.setZero();
    absorb_bounds(m.position, m.velocity, bounds);
    m.current_value = problem.evaluate(m.position);
    greedy_memory_update(sp, m);
  }
}

Vector rand2_mutant(const Vector& x1, const Vector& x2, const Vector& x3,
                    const Vector& x4, const Vector& x5, double weight) {
  return x1 + weight * (x2 - x3) + weight * (x4 - x5);
}

Vector best2_mutant(const Vector& best, const Vector& x1, const Vector& x2,
                    const Vector& x3, const Vector& x4, double weight) {
  return best + weight * (x1 - x2) + weight * (x3 - x4);
}

namespace {

/// Distinct member indices, none equal to `target` or to each other.
std::vector<int> pick_donors(int count, int target, int size,
                             RandomStream& stream) {
  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(picked.size()) < count) {
    const int r = stream.uniform_int(size);
    if (r == target) continue;
    if (std::find(picked.begin(), picked.end(), r) != picked.end()) continue;
    picked.push_back(r);
  }
  return picked;
}

}  // namespace

void de_step(SubPopulation& sp, const DeParams& params, const Bounds& bounds,
             RandomStream& stream, ProblemView& problem) {
  const int size = static_cast<int>(sp.members.size());
  if (size < de_min_population(params.strategy)) {
    throw std::invalid_argument(
        std::string("population too small for ") + to_string(params.strategy));
  }
  const int d = static_cast<int>(sp.gbest_position.size());

  for (int i = 0; i < size; ++i) {
    Individual& m = sp.members[static_cast<std::size_t>(i)];
    if (m.role != Role::Plain) continue;

    Vector mutant;
    if (params.strategy == DeStrategy::Rand2Bin) {
      const auto r = pick_donors(5, i, size, stream);
      mutant = rand2_mutant(sp.members[r[0]].position, sp.members[r[1]].position,
                            sp.members[r[2]].position, sp.members[r[3]].position,
                            sp.members[r[4]].position, params.weight);
    } else {
      const auto r = pick_donors(4, i, size, stream);
      mutant = best2_mutant(sp.gbest_position, sp.members[r[0]].position,
                            sp.members[r[1]].position, sp.members[r[2]].position,
                            sp.members[r[3]].position, params.weight);
    }

    Vector trial = m.position;
    const int forced = stream.uniform_int(d);
    for (int j = 0; j < d; ++j) {
      if (j == forced || stream.uniform() < params.crossover) {
        trial[j] = mutant[j];
      }
    }
    Vector zero_velocity = Vector::Zero(d);
    absorb_bounds(trial, zero_velocity, bounds);

    const double trial_value = problem.evaluate(trial);
    if (trial_value >= m.current_value) {
      m.position = trial;
      m.current_value = trial_value;
    }
    greedy_memory_update(sp, m);
  }
}

void brownian_step(SubPopulation& sp, double sigma, const Bounds& bounds,
                   RandomStream& stream, ProblemView& problem) {
  const int d = static_cast<int>(sp.gbest_position.size());
  for (Individual& m : sp.members) {
    if (m.role != Role::Brownian) continue;
    for (int j = 0; j < d; ++j) {
      m.position[j] = sp.gbest_position[j] + sigma * stream.gaussian();
    }
    m.velocity.setZero();
    absorb_bounds(m.position, m.velocity, bounds);
    m.current_value = problem.evaluate(m.position);
    greedy_memory_update(sp, m);
  }
}

double exclusion_radius(const Bounds& bounds, int subpop_count,
                        int dimension) {
  return 0.5 * bounds.range() /
         std::pow(static_cast<double>(subpop_count), 1.0 / dimension);
}

bool is_converged(const SubPopulation& sp, double radius) {
  return diameter(sp) < radius;
}

std::vector<int> exclusion(std::vector<SubPopulation>& subpops, double radius,
                           const ReinitFn& reinit) {
  const std::size_t n = subpops.size();
  // Mark on a snapshot of the incoming bests so the outcome cannot depend on
  // reinitialization order.
  std::vector<bool> marked(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if ((subpops[a].gbest_position - subpops[b].gbest_position).norm() >=
          radius) {
        continue;
      }
      std::size_t loser;
      if (subpops[a].gbest_value != subpops[b].gbest_value) {
        loser = subpops[a].gbest_value < subpops[b].gbest_value ? a : b;
      } else {
        loser = subpops[a].id < subpops[b].id ? b : a;  // lower id survives
      }
      marked[loser] = true;
    }
  }
  std::vector<int> reinitialized;
  for (std::size_t i = 0; i < n; ++i) {
    if (!marked[i]) continue;
    reinitialized.push_back(subpops[i].id);
    reinit(subpops[i]);
  }
  return reinitialized;
}

void anti_convergence(std::vector<SubPopulation>& subpops, double radius,
                      const ReinitFn& reinit) {
  if (subpops.empty()) return;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < subpops.size(); ++i) {
    if (!is_converged(subpops[i], radius)) return;
    const bool lower = subpops[i].gbest_value < subpops[worst].gbest_value;
    const bool tied_later = subpops[i].gbest_value == subpops[worst].gbest_value &&
                            subpops[i].id > subpops[worst].id;
    if (i > 0 && (lower || tied_later)) worst = i;
  }
  reinit(subpops[worst]);
}

}  // namespace dopt
