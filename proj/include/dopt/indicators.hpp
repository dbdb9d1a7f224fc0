#pragma once

#include <span>
#include <vector>

namespace dopt {

/// Indicators of a single run, plus the raw evaluation log they were
/// computed from so they can be re-derived independently.
struct RunResult {
  int run_index = 0;
  double offline_error = 0.0;        // mean error over every evaluation
  double error_before_change = 0.0;  // mean of the final error per environment
  std::vector<double> per_fe_error;
  std::vector<double> last_error_per_env;
  std::vector<double> per_fe_fitness;
  std::vector<int> per_fe_env;
};

struct IndicatorStats {
  double mean = 0.0;
  double median = 0.0;
  double standard_error = 0.0;  // sample std (n-1) / sqrt(n); 0 for n = 1
};

/// Cross-run aggregate plus the averaged plot series.
struct ExperimentSummary {
  std::vector<RunResult> runs;
  IndicatorStats offline_error;
  IndicatorStats error_before_change;
  /// Running mean of the per-evaluation error, averaged element-wise over
  /// runs; its last entry equals the mean offline error.
  std::vector<double> offline_error_series;
  /// Raw per-evaluation error averaged element-wise over runs.
  std::vector<double> current_error_series;
};

/// Arithmetic mean of the per-evaluation errors. Throws on an empty log.
double offline_error(std::span<const double> per_fe_error);

/// Arithmetic mean of the final error of each environment. Throws on empty.
double error_before_change(std::span<const double> last_error_per_env);

double mean_of(std::span<const double> values);
double median_of(std::span<const double> values);
double standard_error_of(std::span<const double> values);

/// Mean/median/standard error per indicator and the averaged error series.
/// Permutation-invariant over runs. Throws when `runs` is empty.
ExperimentSummary summarize(std::vector<RunResult> runs);

}  // namespace dopt
