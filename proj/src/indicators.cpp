#include "dopt/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dopt {

double mean_of(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("mean of empty range");
  }
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double median_of(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of empty range");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2]
                    : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double standard_error_of(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) {
    throw std::invalid_argument("standard error of empty range");
  }
  if (n == 1) return 0.0;  // sample std of a single value is defined as 0
  const double mean = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sample_std = std::sqrt(ss / static_cast<double>(n - 1));
  return sample_std / std::sqrt(static_cast<double>(n));
}

double offline_error(std::span<const double> per_fe_error) {
  if (per_fe_error.empty()) {
    throw std::invalid_argument("offline error of an empty evaluation log");
  }
  return mean_of(per_fe_error);
}

double error_before_change(std::span<const double> last_error_per_env) {
  if (last_error_per_env.empty()) {
    throw std::invalid_argument("error-before-change of zero environments");
  }
  return mean_of(last_error_per_env);
}

ExperimentSummary summarize(std::vector<RunResult> runs) {
  if (runs.empty()) {
    throw std::invalid_argument("summarize requires at least one run");
  }
  std::sort(runs.begin(), runs.end(),
            [](const RunResult& a, const RunResult& b) {
              return a.run_index < b.run_index;
            });

  ExperimentSummary summary;
  std::vector<double> eo, ebc;
  eo.reserve(runs.size());
  ebc.reserve(runs.size());
  for (const RunResult& r : runs) {
    eo.push_back(r.offline_error);
    ebc.push_back(r.error_before_change);
  }
  summary.offline_error = {mean_of(eo), median_of(eo), standard_error_of(eo)};
  summary.error_before_change = {mean_of(ebc), median_of(ebc),
                                 standard_error_of(ebc)};

  const std::size_t len = runs.front().per_fe_error.size();
  summary.current_error_series.assign(len, 0.0);
  for (const RunResult& r : runs) {
    for (std::size_t i = 0; i < len; ++i) {
      summary.current_error_series[i] += r.per_fe_error[i];
    }
  }
  for (double& v : summary.current_error_series) {
    v /= static_cast<double>(runs.size());
  }
  // Running mean of the averaged raw errors; averaging and the cumulative
  // mean commute, so this equals the cross-run mean of per-run series.
  summary.offline_error_series.assign(len, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    acc += summary.current_error_series[i];
    summary.offline_error_series[i] = acc / static_cast<double>(i + 1);
  }

  summary.runs = std::move(runs);
  return summary;
}

}  // namespace dopt
