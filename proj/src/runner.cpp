#include "dopt/runner.hpp"

#include <chrono>
#include <ostream>
#include <random>

namespace dopt {

void ExperimentConfig::validate() const {
  problem.validate();
  if (run_count < 1) {
    throw std::invalid_argument("run_count must be >= 1");
  }
  if (grid_resolution < 1) {
    throw std::invalid_argument("grid_resolution must be >= 1");
  }
  if (emit_frames && problem.dimension != 2) {
    throw std::invalid_argument("education mode requires dimension 2");
  }
  if (!edoa_registered(algorithm)) {
    std::string names;
    for (const std::string& n : edoa_names()) names += ' ' + n;
    throw std::invalid_argument("unknown algorithm '" + algorithm +
                                "' (valid:" + names + ")");
  }
}

namespace {

RunResult result_from_ledger(const EvaluationLedger& ledger, int run_index) {
  RunResult r;
  r.run_index = run_index;
  r.per_fe_error = ledger.per_fe_error();
  r.last_error_per_env = ledger.last_error_per_env();
  r.per_fe_fitness = ledger.per_fe_fitness();
  r.per_fe_env = ledger.per_fe_env();
  r.offline_error = offline_error(r.per_fe_error);
  r.error_before_change = error_before_change(r.last_error_per_env);
  return r;
}

RunResult execute_run(const ExperimentConfig& config,
                      const EnvironmentSequence& sequence, int run_index,
                      EducationRecorder* recorder, std::ostream* progress) {
  EvaluationLedger ledger(sequence);
  ProblemView view(ledger);
  RandomStream algorithm_stream(config.experiment_seed ^
                                static_cast<std::uint64_t>(run_index));
  auto algorithm =
      make_edoa(config.algorithm, config.edoa, std::move(algorithm_stream));

  int reported_env = 0;
  auto report = [&] {
    if (progress != nullptr && ledger.current_env() != reported_env) {
      reported_env = ledger.current_env();
      *progress << "  run " << run_index << '/' << config.run_count << "  env "
                << reported_env << '/'
                << sequence.spec.environment_count << '\n';
    }
  };

  try {
    algorithm->init(view);
    report();
    if (recorder != nullptr) {
      recorder->record_frame(ledger, 0, algorithm->subpopulations());
    }
    int iteration = 0;
    while (!ledger.budget_exhausted()) {
      ++iteration;
      algorithm->iterate(view);
      if (view.consume_change_flag()) {
        algorithm->react_to_change(view);
      }
      if (recorder != nullptr) {
        recorder->record_frame(ledger, iteration,
                               algorithm->subpopulations());
      }
      report();
    }
  } catch (const BudgetExhausted&) {
    // Clean stop: the budget ran out mid-step. The ledger holds the full log.
  }
  return result_from_ledger(ledger, run_index);
}

std::uint64_t fresh_entropy_seed() {
  std::random_device device;
  const auto now = static_cast<std::uint64_t>(
      std::chrono::steady_clock::now().time_since_epoch().count());
  return (static_cast<std::uint64_t>(device()) << 32) ^ device() ^ now;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 std::ostream* progress) {
  config.validate();

  ExperimentOutcome outcome;
  // Experimentation shares one problem instance across algorithms and runs;
  // education draws a fresh instance on every invocation.
  outcome.benchmark_seed =
      config.emit_frames ? fresh_entropy_seed() : config.experiment_seed;
  RandomStream benchmark_stream(outcome.benchmark_seed);
  const EnvironmentSequence sequence =
      generate_sequence(config.problem, benchmark_stream);
  outcome.environment_digest = sequence_digest(sequence);

  outcome.education =
      EducationRecorder(config.emit_frames, config.grid_resolution);
  const int runs = config.emit_frames ? 1 : config.run_count;

  std::vector<RunResult> results;
  results.reserve(static_cast<std::size_t>(runs));
  for (int run = 1; run <= runs; ++run) {
    if (progress != nullptr) {
      *progress << config.algorithm << " on "
                << to_string(config.problem.benchmark) << ", run " << run
                << '/' << runs << '\n';
    }
    EducationRecorder* recorder =
        config.emit_frames ? &outcome.education : nullptr;
    results.push_back(
        execute_run(config, sequence, run, recorder, progress));
    if (progress != nullptr) {
      const RunResult& r = results.back();
      *progress << "  run " << run << " offline_error " << r.offline_error
                << "  error_before_change " << r.error_before_change << '\n';
    }
  }
  outcome.summary = summarize(std::move(results));
  if (progress != nullptr) {
    *progress << "offline_error mean " << outcome.summary.offline_error.mean
              << " median " << outcome.summary.offline_error.median
              << " standard_error "
              << outcome.summary.offline_error.standard_error << '\n'
              << "error_before_change mean "
              << outcome.summary.error_before_change.mean << " median "
              << outcome.summary.error_before_change.median
              << " standard_error "
              << outcome.summary.error_before_change.standard_error << '\n';
  }
  return outcome;
}

RunResult random_search_run(const EnvironmentSequence& sequence,
                            RandomStream stream, int run_index) {
  EvaluationLedger ledger(sequence);
  const Bounds b = sequence.spec.bounds;
  try {
    for (;;) {
      ledger.evaluate(
          stream.uniform_vector(sequence.spec.dimension, b.lo, b.hi));
    }
  } catch (const BudgetExhausted&) {
  }
  return result_from_ledger(ledger, run_index);
}

}  // namespace dopt
