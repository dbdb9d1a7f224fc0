#include "dopt/evaluation.hpp"

#include <algorithm>
#include <limits>

namespace dopt {

EvaluationLedger::EvaluationLedger(const EnvironmentSequence& sequence)
    : sequence_(&sequence),
      fe_max_(sequence.spec.max_evaluations()),
      best_so_far_(-std::numeric_limits<double>::infinity()) {
  per_fe_error_.reserve(static_cast<std::size_t>(fe_max_));
  per_fe_fitness_.reserve(static_cast<std::size_t>(fe_max_));
  per_fe_env_.reserve(static_cast<std::size_t>(fe_max_));
  last_error_per_env_.assign(
      static_cast<std::size_t>(sequence.spec.environment_count), 0.0);
}

double EvaluationLedger::evaluate(const Vector& x) {
  if (fe_count_ >= fe_max_) {
    budget_exhausted_ = true;
    throw BudgetExhausted{};
  }
  const EnvironmentState& env = sequence_->state(current_env_);
  const double fitness = baseline_fitness(x, env);

  ++fe_count_;
  best_so_far_ = std::max(best_so_far_, fitness);
  per_fe_error_.push_back(env.optimum_value - best_so_far_);
  per_fe_fitness_.push_back(fitness);
  per_fe_env_.push_back(current_env_);

  if (fe_count_ % sequence_->spec.change_frequency == 0) {
    last_error_per_env_[static_cast<std::size_t>(current_env_ - 1)] =
        env.optimum_value - best_so_far_;
    if (fe_count_ == fe_max_) {
      budget_exhausted_ = true;
    } else {
      ++current_env_;
      best_so_far_ = -std::numeric_limits<double>::infinity();
      change_flag_ = true;
    }
  }
  return fitness;
}

bool EvaluationLedger::consume_change_flag() {
  const bool flag = change_flag_;
  change_flag_ = false;
  return flag;
}

double EvaluationLedger::current_error() const {
  return per_fe_error_.empty() ? std::numeric_limits<double>::infinity()
                               : per_fe_error_.back();
}

double peek_fitness(const Vector& x, const EnvironmentState& state) {
  return baseline_fitness(x, state);
}

void EducationRecorder::record_frame(
    const EvaluationLedger& ledger, int iteration,
    std::span<const SubPopulation> populations) {
  if (!enabled_) return;

  const EnvironmentState& env = ledger.sequence().state(ledger.current_env());

  EducationFrame frame;
  frame.env_index = env.env_index;
  frame.iteration = iteration;
  frame.fe_count = ledger.fe_count();
  frame.current_error = ledger.current_error();
  for (const SubPopulation& sp : populations) {
    for (const Individual& m : sp.members) frame.positions.push_back(m.position);
  }
  frames_.push_back(std::move(frame));

  // First frame of this environment: sample the landscape once.
  if (!snapshots_.empty() && snapshots_.back().env_index == env.env_index) {
    return;
  }
  const Bounds bounds = ledger.sequence().spec.bounds;
  EnvironmentSnapshot snap;
  snap.env_index = env.env_index;
  snap.resolution = grid_resolution_;
  snap.lo = bounds.lo;
  snap.hi = bounds.hi;
  snap.grid.reserve(static_cast<std::size_t>(grid_resolution_) *
                    static_cast<std::size_t>(grid_resolution_));
  const double step = grid_resolution_ > 1
                          ? bounds.range() / (grid_resolution_ - 1)
                          : 0.0;
  Vector point(2);
  for (int r = 0; r < grid_resolution_; ++r) {
    for (int c = 0; c < grid_resolution_; ++c) {
      if (grid_resolution_ > 1) {
        point << bounds.lo + c * step, bounds.lo + r * step;
      } else {
        point << 0.5 * (bounds.lo + bounds.hi), 0.5 * (bounds.lo + bounds.hi);
      }
      snap.grid.push_back(peek_fitness(point, env));
    }
  }
  for (int k = 0; k < env.peak_count(); ++k) {
    const Vector center = env.centers.row(k).transpose();
    // Visible iff no other peak tops this one at its own summit.
    if (peak_value(center, env, k) >= peek_fitness(center, env)) {
      snap.visible_peaks.push_back(center);
    }
  }
  snap.optimum_position = env.optimum_position;
  snapshots_.push_back(std::move(snap));
}

}  // namespace dopt
