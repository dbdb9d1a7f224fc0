#include "dopt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

namespace dopt {

namespace {

/// Problem-side --param keys; returns false so unknown keys fall through to
/// the algorithm config.
bool apply_problem_override(ProblemSpec& p, const std::string& raw_key,
                            const std::string& value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '-', '_');
  auto num = [&] {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size()) {
      throw std::invalid_argument("invalid value '" + value + "' for " + key);
    }
    return v;
  };

  if (key == "min_coordinate") {
    p.bounds.lo = num();
  } else if (key == "max_coordinate") {
    p.bounds.hi = num();
  } else if (key == "height_severity") {
    p.height_severity = num();
  } else if (key == "min_height") {
    p.min_height = num();
  } else if (key == "max_height") {
    p.max_height = num();
  } else if (key == "width_severity") {
    p.width_severity = num();
  } else if (key == "min_width") {
    p.min_width = num();
  } else if (key == "max_width") {
    p.max_width = num();
  } else if (key == "tau_severity") {
    p.tau_severity = num();
  } else if (key == "min_tau") {
    p.min_tau = num();
  } else if (key == "max_tau") {
    p.max_tau = num();
  } else if (key == "eta_severity") {
    p.eta_severity = num();
  } else if (key == "min_eta") {
    p.min_eta = num();
  } else if (key == "max_eta") {
    p.max_eta = num();
  } else if (key == "angle_severity") {
    p.angle_severity = num();
  } else if (key == "min_angle") {
    p.min_angle = num();
  } else if (key == "max_angle") {
    p.max_angle = num();
  } else {
    return false;
  }
  return true;
}

void build_app(CLI::App& app, ExperimentConfig& config, std::string& benchmark,
               std::string& output_dir, std::vector<std::string>& params) {
  app.description(
      "Dynamic optimization testbed: configurable moving-peaks benchmarks, "
      "population-based tracking algorithms, reproducible seeded "
      "experiments");
  app.add_option("--algorithm", config.algorithm,
                 "Algorithm name (see `dopt list`)")
      ->capture_default_str();
  app.add_option("--benchmark", benchmark, "Benchmark name (MPB or GMPB)")
      ->capture_default_str();
  app.add_option("--dimension", config.problem.dimension, "Search dimension")
      ->capture_default_str();
  app.add_option("--peaks", config.problem.peak_count, "Number of peaks")
      ->capture_default_str();
  app.add_option("--change-frequency", config.problem.change_frequency,
                 "Evaluations per environment")
      ->capture_default_str();
  app.add_option("--shift-severity", config.problem.shift_severity,
                 "Center relocation distance per change")
      ->capture_default_str();
  app.add_option("--environments", config.problem.environment_count,
                 "Number of environments")
      ->capture_default_str();
  app.add_option("--runs", config.run_count, "Independent runs")
      ->capture_default_str();
  app.add_option("--seed", config.experiment_seed, "Experiment seed")
      ->capture_default_str();
  app.add_option("--output-dir", output_dir, "Directory for output files")
      ->capture_default_str();
  app.add_flag("--emit-error-series", config.emit_error_series,
               "Write averaged offline/current error series CSVs");
  app.add_flag("--emit-frames", config.emit_frames,
               "Education mode: single 2-D run with frame and grid dumps");
  app.add_option("--grid-resolution", config.grid_resolution,
                 "Education grid resolution per axis")
      ->capture_default_str();
  app.add_option("--timestamp", config.timestamp,
                 "Pin the timestamp used in output file names");
  app.add_option("--param", params,
                 "KEY=VALUE benchmark or algorithm override (repeatable)");
  app.add_subcommand("list", "Print registered algorithm and benchmark names");
}

}  // namespace

CliRequest parse_cli(const std::vector<std::string>& args) {
  CliRequest request;
  ExperimentConfig& config = request.config;

  CLI::App app{"", "dopt"};
  std::string benchmark = "GMPB";
  std::string output_dir = config.output_dir.string();
  std::vector<std::string> params;
  build_app(app, config, benchmark, output_dir, params);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);  // CLI11 expects the arguments reversed

  if (app.got_subcommand("list")) {
    request.list_only = true;
    return request;
  }

  config.problem.benchmark = benchmark_from_string(benchmark);
  config.output_dir = output_dir;
  for (const std::string& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--param expects KEY=VALUE, got '" + p +
                                  "'");
    }
    const std::string key = p.substr(0, eq);
    const std::string value = p.substr(eq + 1);
    if (!apply_problem_override(config.problem, key, value)) {
      config.edoa.apply_override(key, value);
    }
  }
  config.validate();
  return request;
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  CliRequest request;
  try {
    request = parse_cli(args);
  } catch (const CLI::CallForHelp&) {
    CLI::App app{"", "dopt"};
    ExperimentConfig config;
    std::string benchmark = "GMPB";
    std::string output_dir = config.output_dir.string();
    std::vector<std::string> params;
    build_app(app, config, benchmark, output_dir, params);
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (request.list_only) {
    std::cout << "algorithms:\n";
    for (const std::string& name : edoa_names()) {
      std::cout << "  " << name << '\n';
    }
    std::cout << "benchmarks:\n  GMPB\n  MPB\n";
    return 0;
  }

  try {
    const ExperimentOutcome outcome =
        run_experiment(request.config, &std::cout);
    const OutputPaths paths = write_outputs(outcome, request.config);
    std::cout << "results: " << paths.results_csv.string() << '\n'
              << "summary: " << paths.summary_json.string() << '\n';
    if (!paths.offline_series_csv.empty()) {
      std::cout << "series: " << paths.offline_series_csv.string() << ", "
                << paths.current_series_csv.string() << '\n';
    }
    if (!paths.frames_jsonl.empty()) {
      std::cout << "frames: " << paths.frames_jsonl.string() << " (+"
                << paths.grid_files.size() << " grid files)\n";
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dopt
