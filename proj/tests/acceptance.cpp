// Acceptance suite: end-to-end checks of the platform's contracts, one
// pass/fail line each. Run via ctest or directly; exits non-zero when any
// check fails.

#include "dopt/cli.hpp"
#include "dopt/runner.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace dopt;

namespace {

int failures = 0;
std::vector<std::string> notes;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    notes.push_back(what);
  }
}

void report(int number, const std::string& name, int failures_before) {
  const bool ok = failures == failures_before;
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << name << '\n';
  if (!ok) {
    for (const auto& n : notes) std::cout << "       " << n << '\n';
  }
  notes.clear();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

ExperimentConfig determinism_config() {
  ExperimentConfig config;
  config.algorithm = "mQSO";
  config.problem.benchmark = BenchmarkId::GMPB;
  config.problem.dimension = 2;
  config.problem.peak_count = 10;
  config.problem.change_frequency = 500;
  config.problem.environment_count = 10;
  config.run_count = 5;
  config.experiment_seed = 20240101;
  config.timestamp = "19700101T000000Z";
  return config;
}

// ---------------------------------------------------------------------------

void criterion_determinism(const ExperimentOutcome& outcome) {
  const int before = failures;
  const auto start = std::chrono::steady_clock::now();

  ExperimentConfig config = determinism_config();
  config.output_dir = fresh_dir("dopt_accept_det_a");
  const OutputPaths a = write_outputs(outcome, config);

  ExperimentConfig again = determinism_config();
  again.output_dir = fresh_dir("dopt_accept_det_b");
  const ExperimentOutcome second = run_experiment(again);
  const OutputPaths b = write_outputs(second, again);

  expect(slurp(a.results_csv) == slurp(b.results_csv),
         "results CSV differs between executions");
  expect(slurp(a.summary_json) == slurp(b.summary_json),
         "summary JSON differs between executions");
  expect(seconds_since(start) < 10.0, "determinism check exceeded 10 s");
  report(1, "determinism: identical config and seed, identical bytes",
         before);
}

void criterion_seed_fairness() {
  const int before = failures;
  ExperimentConfig rpso = determinism_config();
  rpso.algorithm = "RPSO";
  rpso.run_count = 1;
  ExperimentConfig mqso = determinism_config();
  mqso.algorithm = "mQSO";
  mqso.run_count = 1;
  expect(run_experiment(rpso).environment_digest ==
             run_experiment(mqso).environment_digest,
         "environment digests differ across algorithms");
  report(2, "seed fairness: same instance for every algorithm", before);
}

void criterion_optimum_consistency() {
  const int before = failures;
  ProblemSpec spec;  // GMPB, d = 5, 10 peaks, default attribute ranges
  spec.environment_count = 100;
  RandomStream bench(7);
  const EnvironmentSequence seq = generate_sequence(spec, bench);
  RandomStream probes(8);

  for (const EnvironmentState& s : seq.states) {
    expect(std::abs(peek_fitness(s.optimum_position, s) - s.optimum_value) <=
               1e-9,
           "baseline at the optimum position misses the optimum value");
    expect(s.optimum_value == s.heights.maxCoeff(),
           "optimum value is not the maximum height");
    for (int i = 0; i < 10000; ++i) {
      const Vector x =
          probes.uniform_vector(spec.dimension, spec.bounds.lo, spec.bounds.hi);
      if (peek_fitness(x, s) > s.optimum_value) {
        expect(false, "random probe exceeded the optimum");
        break;
      }
    }
  }
  report(3, "optimum consistency over 100 generated environments", before);
}

void criterion_indicator_oracle(const ExperimentOutcome& outcome,
                                const EnvironmentSequence& seq) {
  const int before = failures;
  const int cf = seq.spec.change_frequency;
  const int T = seq.spec.environment_count;

  for (const RunResult& run : outcome.summary.runs) {
    // Brute-force replay of the raw fitness log, written against the
    // indicator definitions rather than the ledger.
    double error_sum = 0.0;
    double last_error_sum = 0.0;
    std::size_t idx = 0;
    for (int t = 1; t <= T; ++t) {
      const double optimum = seq.state(t).optimum_value;
      double best = -std::numeric_limits<double>::infinity();
      double last_error = 0.0;
      for (int v = 0; v < cf; ++v, ++idx) {
        best = std::max(best, run.per_fe_fitness[idx]);
        last_error = optimum - best;
        error_sum += last_error;
      }
      last_error_sum += last_error;
    }
    const double oracle_eo = error_sum / static_cast<double>(cf) / T;
    const double oracle_ebc = last_error_sum / T;
    expect(std::abs(oracle_eo - run.offline_error) <= 1e-12,
           "offline error deviates from the replay oracle");
    expect(std::abs(oracle_ebc - run.error_before_change) <= 1e-12,
           "error before change deviates from the replay oracle");
  }
  report(4, "indicators match an independent replay of the raw log", before);
}

void criterion_error_ordering(const ExperimentOutcome& outcome) {
  const int before = failures;
  for (const RunResult& run : outcome.summary.runs) {
    for (std::size_t i = 1; i < run.per_fe_error.size(); ++i) {
      if (run.per_fe_env[i] == run.per_fe_env[i - 1] &&
          run.per_fe_error[i] > run.per_fe_error[i - 1]) {
        expect(false, "per-evaluation error increased within an environment");
        break;
      }
    }
    expect(run.offline_error >= run.error_before_change,
           "offline error fell below the error before change");
  }
  report(5, "error ordering: non-increasing within environments, E_O >= E_BBC",
         before);
}

void criterion_budget_exactness(const ExperimentOutcome& outcome,
                                const EnvironmentSequence& seq) {
  const int before = failures;
  const auto fe_max = static_cast<std::size_t>(seq.spec.max_evaluations());
  const int cf = seq.spec.change_frequency;
  for (const RunResult& run : outcome.summary.runs) {
    expect(run.per_fe_error.size() == fe_max,
           "counted evaluations differ from cf x T");
    for (std::size_t i = 0; i < run.per_fe_env.size(); ++i) {
      const auto expected = static_cast<int>(i / cf) + 1;  // ceil((i+1)/cf)
      if (run.per_fe_env[i] != expected) {
        expect(false, "environment attribution mismatch");
        break;
      }
    }
  }
  report(6, "budget exactness and environment attribution", before);
}

void criterion_gmpb_degeneracy() {
  const int before = failures;
  ProblemSpec spec;
  spec.benchmark = BenchmarkId::MPB;
  spec.dimension = 5;
  spec.peak_count = 10;
  RandomStream bench(9);
  const EnvironmentSequence seq = generate_sequence(spec, bench);
  const EnvironmentState& mpb = seq.states.front();

  EnvironmentState gmpb = mpb;
  gmpb.benchmark = BenchmarkId::GMPB;
  gmpb.widths = mpb.widths.col(0).replicate(1, spec.dimension);
  gmpb.taus = Vector::Zero(spec.peak_count);
  gmpb.etas = Matrix::Constant(spec.peak_count, 4, 17.0);
  gmpb.angles = Vector::Zero(spec.peak_count);
  gmpb.rotations.assign(static_cast<std::size_t>(spec.peak_count),
                        Matrix::Identity(spec.dimension, spec.dimension));

  RandomStream probes(10);
  for (int i = 0; i < 1000; ++i) {
    const Vector x =
        probes.uniform_vector(spec.dimension, spec.bounds.lo, spec.bounds.hi);
    if (std::abs(gmpb_fitness(x, gmpb) - mpb_fitness(x, mpb)) > 1e-9) {
      expect(false, "degenerate landscape deviates from the cone baseline");
      break;
    }
  }
  Eigen::Vector4d eta{11.0, 14.0, 19.0, 23.0};
  for (int i = 0; i < 1000; ++i) {
    const double y = probes.uniform(-30.0, 30.0);
    if (std::abs(gmpb_transform(y, 0.0, eta) - y) > 1e-12) {
      expect(false, "transform at tau 0 is not the identity");
      break;
    }
  }
  report(7, "degenerate parameters collapse the landscape onto cones",
         before);
}

void criterion_component_scenarios() {
  const int before = failures;
  EnvironmentSequence seq;
  seq.spec.benchmark = BenchmarkId::MPB;
  seq.spec.dimension = 2;
  seq.spec.peak_count = 1;
  seq.spec.change_frequency = 1000000;
  seq.spec.environment_count = 1;
  EnvironmentState state;
  state.benchmark = BenchmarkId::MPB;
  state.centers = Matrix::Zero(1, 2);
  state.heights = Vector::Constant(1, 70.0);
  state.widths = Matrix::Constant(1, 1, 1.0);
  auto [value, position] = optimum_of(state);
  state.optimum_value = value;
  state.optimum_position = position;
  seq.states.push_back(state);

  auto v2 = [](double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
  };
  auto plant = [](SubPopulation& sp, const Vector& spot, double val) {
    for (Individual& m : sp.members) {
      m.position = spot;
      m.velocity.setZero();
      m.pbest_position = spot;
      m.pbest_value = val;
      m.current_value = val;
    }
    sp.gbest_position = spot;
    sp.gbest_value = val;
  };

  {
    EvaluationLedger ledger(seq);
    ProblemView view(ledger);
    EdoaConfig config;
    config.subpop_count = 2;
    config.neutral_count = 3;
    config.quantum_count = 0;
    auto algo = make_edoa("mQSO", config, RandomStream(11));
    algo->init(view);
    plant(algo->subpopulations()[0], v2(1.0, 0.0), 69.0);
    plant(algo->subpopulations()[1], v2(0.0, 0.0), 70.0);
    algo->iterate(view);
    expect(algo->subpopulations()[0].gbest_position != v2(1.0, 0.0),
           "exclusion left the worse subpopulation in place");
    expect(algo->subpopulations()[1].gbest_position == v2(0.0, 0.0),
           "exclusion displaced the better subpopulation");
  }
  {
    EvaluationLedger ledger(seq);
    ProblemView view(ledger);
    EdoaConfig config;
    config.subpop_count = 3;
    config.neutral_count = 3;
    config.quantum_count = 0;
    auto algo = make_edoa("mQSO", config, RandomStream(12));
    algo->init(view);
    plant(algo->subpopulations()[0], v2(-40.0, -40.0), 80.0);
    plant(algo->subpopulations()[1], v2(0.0, 40.0), 90.0);
    plant(algo->subpopulations()[2], v2(40.0, -40.0), 100.0);
    algo->iterate(view);
    expect(algo->subpopulations()[0].gbest_position != v2(-40.0, -40.0),
           "anti-convergence spared the worst swarm");
    expect(algo->subpopulations()[1].gbest_position == v2(0.0, 40.0) &&
               algo->subpopulations()[2].gbest_position == v2(40.0, -40.0),
           "anti-convergence touched a surviving swarm");
  }
  {
    EvaluationLedger ledger(seq);
    ProblemView view(ledger);
    EdoaConfig config;
    config.neutral_count = 2;
    config.quantum_count = 0;
    auto algo = make_edoa("AmQSO", config, RandomStream(13));
    algo->init(view);
    plant(algo->subpopulations()[0], v2(5.0, 5.0), 80.0);
    algo->iterate(view);
    expect(algo->subpopulations().size() == 2,
           "no swarm spawned although all swarms had converged");
  }
  report(8, "component scenarios: exclusion, anti-convergence, adaptive spawn",
         before);
}

void criterion_performance() {
  const int before = failures;
  const auto start = std::chrono::steady_clock::now();

  ExperimentConfig config;
  config.problem.benchmark = BenchmarkId::GMPB;
  config.problem.dimension = 5;
  config.problem.peak_count = 10;
  config.problem.change_frequency = 5000;
  config.problem.shift_severity = 1.0;
  config.problem.environment_count = 10;
  config.run_count = 10;
  config.experiment_seed = 777;

  config.algorithm = "mQSO";
  const double mqso = run_experiment(config).summary.offline_error.mean;
  config.algorithm = "RPSO";
  const double rpso = run_experiment(config).summary.offline_error.mean;

  RandomStream bench(config.experiment_seed);
  const EnvironmentSequence seq = generate_sequence(config.problem, bench);
  std::vector<RunResult> random_runs;
  for (int run = 1; run <= config.run_count; ++run) {
    random_runs.push_back(random_search_run(
        seq,
        RandomStream(config.experiment_seed ^ static_cast<std::uint64_t>(run)),
        run));
  }
  const double random = summarize(std::move(random_runs)).offline_error.mean;

  std::cout << "       mean offline error: mQSO " << mqso << ", RPSO " << rpso
            << ", random search " << random << '\n';
  expect(mqso < rpso, "mQSO did not beat RPSO");
  expect(mqso < random, "mQSO did not beat uniform random search");
  expect(seconds_since(start) < 60.0, "performance check exceeded 60 s");
  report(9, "performance: mQSO below RPSO and random search", before);
}

void criterion_education_dump() {
  const int before = failures;
  ExperimentConfig config;
  config.algorithm = "mQSO";
  config.problem.benchmark = BenchmarkId::GMPB;
  config.problem.dimension = 2;
  config.problem.peak_count = 10;
  config.problem.change_frequency = 500;
  config.problem.environment_count = 5;
  config.emit_frames = true;
  config.grid_resolution = 32;
  config.experiment_seed = 5150;
  config.timestamp = "19700101T000000Z";
  config.output_dir = fresh_dir("dopt_accept_edu");

  const ExperimentOutcome outcome = run_experiment(config);
  const OutputPaths paths = write_outputs(outcome, config);

  expect(paths.grid_files.size() ==
             static_cast<std::size_t>(config.problem.environment_count),
         "expected one grid file per environment");
  for (const auto& grid_path : paths.grid_files) {
    std::ifstream in(grid_path);
    std::string header, meta;
    std::getline(in, header);
    std::getline(in, meta);
    expect(header == "env,resolution,lo,hi", "grid header mismatch");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
      ++rows;
      const auto commas =
          static_cast<int>(std::count(line.begin(), line.end(), ','));
      if (commas != config.grid_resolution - 1) {
        expect(false, "grid row has the wrong number of values");
        break;
      }
    }
    expect(rows == config.grid_resolution, "grid row count mismatch");
  }

  std::ifstream frames(paths.frames_jsonl);
  expect(frames.good(), "frames file missing");
  std::string line;
  int frame_count = 0;
  bool all_in_bounds = true;
  while (std::getline(frames, line)) {
    ++frame_count;
    const auto frame = nlohmann::json::parse(line, nullptr, false);
    if (frame.is_discarded()) {
      expect(false, "frame line is not valid JSON");
      break;
    }
    for (const auto& pos : frame.at("positions")) {
      const double x = pos.at(0).get<double>();
      const double y = pos.at(1).get<double>();
      all_in_bounds = all_in_bounds && x >= config.problem.bounds.lo &&
                      x <= config.problem.bounds.hi &&
                      y >= config.problem.bounds.lo &&
                      y <= config.problem.bounds.hi;
    }
  }
  expect(frame_count > 0, "no frames were recorded");
  expect(all_in_bounds, "a recorded position lies outside the bounds");
  report(10, "education dump: grids per environment, valid JSON lines",
         before);
}

}  // namespace

int main() {
  std::cout << "acceptance suite\n";

  // Criteria 1, 4, 5, 6 share one experiment.
  const ExperimentConfig base = determinism_config();
  const ExperimentOutcome outcome = run_experiment(base);
  RandomStream bench(base.experiment_seed);
  const EnvironmentSequence sequence =
      generate_sequence(base.problem, bench);

  criterion_determinism(outcome);
  criterion_seed_fairness();
  criterion_optimum_consistency();
  criterion_indicator_oracle(outcome, sequence);
  criterion_error_ordering(outcome);
  criterion_budget_exactness(outcome, sequence);
  criterion_gmpb_degeneracy();
  criterion_component_scenarios();
  criterion_performance();
  criterion_education_dump();

  if (failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failures << " check(s) failed\n";
  return 1;
}
