#pragma once

#include "dopt/edoa.hpp"
#include "dopt/evaluation.hpp"
#include "dopt/indicators.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace dopt {

/// Full description of one experiment: problem instance, algorithm,
/// replication, and output options.
struct ExperimentConfig {
  std::string algorithm = "mQSO";
  ProblemSpec problem{};
  int run_count = 31;
  std::uint64_t experiment_seed = 1;
  bool emit_error_series = false;
  bool emit_frames = false;  // education mode: single run, d = 2
  int grid_resolution = 100;
  std::filesystem::path output_dir = "results";
  /// Pinned basic ISO-8601 timestamp for the output file names; empty means
  /// "now". Pinning makes output files reproducible byte for byte.
  std::string timestamp = "";
  EdoaConfig edoa{};

  void validate() const;  // throws std::invalid_argument
};

/// Everything a finished experiment produced.
struct ExperimentOutcome {
  ExperimentSummary summary;
  EducationRecorder education;
  std::uint64_t benchmark_seed = 0;  // effective seed the sequence came from
  std::uint64_t environment_digest = 0;
};

/// Experimentation mode: one environment sequence from the benchmark stream
/// (same for every algorithm under the same seed), run_count independent
/// runs, indicators, summary. Education mode (emit_frames): a single run on
/// a fresh benchmark seed with frames recorded. Progress goes to `progress`
/// when non-null.
ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 std::ostream* progress = nullptr);

struct OutputPaths {
  std::filesystem::path results_csv;
  std::filesystem::path summary_json;
  std::filesystem::path offline_series_csv;  // empty unless emitted
  std::filesystem::path current_series_csv;
  std::filesystem::path frames_jsonl;
  std::vector<std::filesystem::path> grid_files;
};

/// Write the results CSV (per-run rows, statistics footer, config echo), the
/// machine-readable summary JSON, and, when configured, the averaged error
/// series and the education frame/grid dumps. Content is deterministic; only
/// the timestamp in the names varies unless pinned.
OutputPaths write_outputs(const ExperimentOutcome& outcome,
                          const ExperimentConfig& config);

/// Uniform random search driven straight through a ledger; the reference
/// floor any population method must beat.
RunResult random_search_run(const EnvironmentSequence& sequence,
                            RandomStream stream, int run_index);

std::string current_timestamp();  // basic ISO-8601, UTC

}  // namespace dopt
