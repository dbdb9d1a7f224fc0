#pragma once

#include "dopt/benchmark.hpp"
#include "dopt/types.hpp"

#include <cstdint>
#include <span>

namespace dopt {

/// Thrown by EvaluationLedger::evaluate once the budget is spent. The main
/// loop treats this as a clean stop, not a fault.
struct BudgetExhausted {};

/// The single gateway all fitness calls pass through: counts evaluations,
/// advances the environment on schedule, keeps the per-evaluation error log
/// the indicators are computed from, and raises the change flag that
/// algorithms poll once per iteration.
class EvaluationLedger {
 public:
  explicit EvaluationLedger(const EnvironmentSequence& sequence);

  /// Evaluate x against the current environment and log the error of the
  /// best solution found so far in it. The evaluation that lands on a
  /// change-frequency boundary is charged to the ending environment; the
  /// next one is scored against the new landscape.
  double evaluate(const Vector& x);

  /// Read-once change flag.
  bool consume_change_flag();

  bool budget_exhausted() const { return budget_exhausted_; }
  std::int64_t fe_count() const { return fe_count_; }
  std::int64_t fe_max() const { return fe_max_; }
  int current_env() const { return current_env_; }
  double best_so_far() const { return best_so_far_; }
  double current_error() const;

  const EnvironmentSequence& sequence() const { return *sequence_; }
  const std::vector<double>& per_fe_error() const { return per_fe_error_; }
  const std::vector<double>& per_fe_fitness() const { return per_fe_fitness_; }
  const std::vector<int>& per_fe_env() const { return per_fe_env_; }
  const std::vector<double>& last_error_per_env() const {
    return last_error_per_env_;
  }

 private:
  const EnvironmentSequence* sequence_;
  std::int64_t fe_count_ = 0;
  std::int64_t fe_max_;
  int current_env_ = 1;
  double best_so_far_;
  bool change_flag_ = false;
  bool budget_exhausted_ = false;
  std::vector<double> per_fe_error_;
  std::vector<double> per_fe_fitness_;  // raw log, kept for replay checks
  std::vector<int> per_fe_env_;
  std::vector<double> last_error_per_env_;
};

/// Evaluate the baseline without touching any ledger. Used by the education
/// grid sampler and by optimum verification tests only.
double peek_fitness(const Vector& x, const EnvironmentState& state);

/// The black-box face of the ledger handed to algorithms: fitness, the
/// change flag, and public problem geometry. Nothing else of the benchmark
/// is reachable through it.
class ProblemView {
 public:
  explicit ProblemView(EvaluationLedger& ledger) : ledger_(&ledger) {}

  double evaluate(const Vector& x) { return ledger_->evaluate(x); }
  bool consume_change_flag() { return ledger_->consume_change_flag(); }
  bool budget_exhausted() const { return ledger_->budget_exhausted(); }
  int dimension() const { return ledger_->sequence().spec.dimension; }
  Bounds bounds() const { return ledger_->sequence().spec.bounds; }

 private:
  EvaluationLedger* ledger_;
};

/// One recorded iteration: where every individual stood and how far the best
/// found solution was from the optimum at that moment.
struct EducationFrame {
  int env_index = 0;
  int iteration = 0;
  std::int64_t fe_count = 0;
  std::vector<Vector> positions;
  double current_error = 0.0;
};

/// Per-environment landscape sample taken on the first recorded frame of the
/// environment: a dense fitness grid over the bounds, the centers of visible
/// peaks (those that are the argmax of the baseline at their own center),
/// and the optimum position.
struct EnvironmentSnapshot {
  int env_index = 0;
  int resolution = 0;
  double lo = 0.0, hi = 0.0;
  std::vector<double> grid;  // row-major resolution x resolution
  std::vector<Vector> visible_peaks;
  Vector optimum_position;
};

/// Collects frames for offline visualization of 2-dimensional runs. Grid
/// sampling goes through peek_fitness, so recording never distorts the
/// indicators.
class EducationRecorder {
 public:
  EducationRecorder() = default;
  EducationRecorder(bool enabled, int grid_resolution)
      : enabled_(enabled), grid_resolution_(grid_resolution) {}

  bool enabled() const { return enabled_; }
  int grid_resolution() const { return grid_resolution_; }
  const std::vector<EducationFrame>& frames() const { return frames_; }
  const std::vector<EnvironmentSnapshot>& snapshots() const {
    return snapshots_;
  }

  void record_frame(const EvaluationLedger& ledger, int iteration,
                    std::span<const SubPopulation> populations);

 private:
  bool enabled_ = false;
  int grid_resolution_ = 100;
  std::vector<EducationFrame> frames_;
  std::vector<EnvironmentSnapshot> snapshots_;
};

}  // namespace dopt
