#include "dopt/cli.hpp"
#include "dopt/runner.hpp"

#include <doctest.h>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace dopt;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.algorithm = "mQSO";
  config.problem.benchmark = BenchmarkId::GMPB;
  config.problem.dimension = 2;
  config.problem.peak_count = 5;
  config.problem.change_frequency = 150;
  config.problem.environment_count = 3;
  config.run_count = 3;
  config.experiment_seed = 424242;
  config.timestamp = "19700101T000000Z";
  return config;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("an experiment produces one result per run") {
  ExperimentConfig config = small_config();
  auto outcome = run_experiment(config);
  CHECK(outcome.summary.runs.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(outcome.summary.runs[static_cast<std::size_t>(i)].run_index ==
          i + 1);
  }
  CHECK(outcome.benchmark_seed == config.experiment_seed);
}

TEST_CASE("same config and seed give byte-identical output files") {
  ExperimentConfig config = small_config();
  config.emit_error_series = true;

  config.output_dir = fresh_dir("dopt_det_a");
  auto paths_a = write_outputs(run_experiment(config), config);
  config.output_dir = fresh_dir("dopt_det_b");
  auto paths_b = write_outputs(run_experiment(config), config);

  CHECK(slurp(paths_a.results_csv) == slurp(paths_b.results_csv));
  CHECK(slurp(paths_a.summary_json) == slurp(paths_b.summary_json));
  CHECK(slurp(paths_a.offline_series_csv) == slurp(paths_b.offline_series_csv));
  CHECK(slurp(paths_a.current_series_csv) == slurp(paths_b.current_series_csv));
}

TEST_CASE("the environment sequence does not depend on the algorithm") {
  ExperimentConfig a = small_config();
  a.algorithm = "RPSO";
  a.run_count = 1;
  ExperimentConfig b = small_config();
  b.algorithm = "mQSO";
  b.run_count = 2;  // nor on the run count
  CHECK(run_experiment(a).environment_digest ==
        run_experiment(b).environment_digest);
}

TEST_CASE("results csv layout: data rows, statistics footer, config echo") {
  ExperimentConfig config = small_config();
  config.run_count = 1;
  config.output_dir = fresh_dir("dopt_csv");
  auto paths = write_outputs(run_experiment(config), config);

  const auto lines = lines_of(slurp(paths.results_csv));
  REQUIRE(lines.size() > 5);
  CHECK(lines[0] == "run,offline_error,e_bbc");
  CHECK(lines[1].rfind("1,", 0) == 0);
  CHECK(lines[2].rfind("mean,", 0) == 0);
  CHECK(lines[3].rfind("median,", 0) == 0);
  CHECK(lines[4].rfind("standard_error,", 0) == 0);
  CHECK(lines[5].empty());
  bool has_algorithm_echo = false;
  for (const auto& line : lines) {
    if (line.rfind("# algorithm = mQSO", 0) == 0) has_algorithm_echo = true;
  }
  CHECK(has_algorithm_echo);
}

TEST_CASE("csv statistics footer equals statistics over the column") {
  ExperimentConfig config = small_config();
  config.output_dir = fresh_dir("dopt_footer");
  auto paths = write_outputs(run_experiment(config), config);

  const auto lines = lines_of(slurp(paths.results_csv));
  std::vector<double> eo_column;
  double footer_mean = -1.0;
  for (const auto& line : lines) {
    std::stringstream ss(line);
    std::string run, eo;
    if (!std::getline(ss, run, ',')) continue;
    if (!std::getline(ss, eo, ',')) continue;
    if (run == "mean") {
      footer_mean = std::stod(eo);
    } else if (run != "run" && run != "median" && run != "standard_error" &&
               !run.empty() && run[0] != '#') {
      eo_column.push_back(std::stod(eo));
    }
  }
  REQUIRE(eo_column.size() == 3);
  CHECK(footer_mean == doctest::Approx(mean_of(eo_column)).epsilon(1e-12));
}

TEST_CASE("series files carry one row per evaluation") {
  ExperimentConfig config = small_config();
  config.emit_error_series = true;
  config.run_count = 2;
  config.output_dir = fresh_dir("dopt_series");
  auto paths = write_outputs(run_experiment(config), config);

  const auto offline = lines_of(slurp(paths.offline_series_csv));
  const auto current = lines_of(slurp(paths.current_series_csv));
  const auto fe_max = static_cast<std::size_t>(
      config.problem.change_frequency * config.problem.environment_count);
  CHECK(offline.size() == fe_max + 1);  // header + one row per evaluation
  CHECK(current.size() == fe_max + 1);
  CHECK(offline[0] == "fe,value");
}

TEST_CASE("configuration errors are rejected before any run") {
  ExperimentConfig config = small_config();
  config.algorithm = "NoSuchThing";
  CHECK_THROWS_WITH_AS(run_experiment(config), doctest::Contains("DynDE"),
                       std::invalid_argument);

  config = small_config();
  config.problem.dimension = 5;
  config.emit_frames = true;
  CHECK_THROWS_WITH_AS(run_experiment(config),
                       doctest::Contains("education mode requires dimension 2"),
                       std::invalid_argument);

  config = small_config();
  config.run_count = 0;
  CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
}

TEST_CASE("education mode records frames and one grid per environment") {
  ExperimentConfig config = small_config();
  // Plenty of room for iteration plus change reaction inside one
  // environment; with cf below that cost a change can pass frameless.
  config.problem.change_frequency = 500;
  config.emit_frames = true;
  config.grid_resolution = 16;
  config.run_count = 5;  // ignored: education is a single run
  auto outcome = run_experiment(config);
  CHECK(outcome.summary.runs.size() == 1);
  CHECK(outcome.education.snapshots().size() ==
        static_cast<std::size_t>(config.problem.environment_count));
  CHECK_FALSE(outcome.education.frames().empty());
}

TEST_CASE("cli parses the documented defaults") {
  auto request = parse_cli({});
  CHECK_FALSE(request.list_only);
  CHECK(request.config.algorithm == "mQSO");
  CHECK(request.config.problem.benchmark == BenchmarkId::GMPB);
  CHECK(request.config.problem.dimension == 5);
  CHECK(request.config.problem.peak_count == 10);
  CHECK(request.config.problem.change_frequency == 5000);
  CHECK(request.config.problem.shift_severity == 1.0);
  CHECK(request.config.problem.environment_count == 100);
  CHECK(request.config.run_count == 31);
}

TEST_CASE("cli maps flags and params onto the config") {
  auto request = parse_cli({"--algorithm", "DynDE", "--benchmark", "MPB",
                            "--dimension", "2", "--peaks", "25",
                            "--change-frequency", "500", "--shift-severity",
                            "2", "--environments", "10", "--runs", "7",
                            "--seed", "99", "--param", "height-severity=3",
                            "--param", "subpop_count=4", "--param",
                            "min_height=20"});
  CHECK(request.config.algorithm == "DynDE");
  CHECK(request.config.problem.benchmark == BenchmarkId::MPB);
  CHECK(request.config.problem.peak_count == 25);
  CHECK(request.config.problem.shift_severity == 2.0);
  CHECK(request.config.run_count == 7);
  CHECK(request.config.experiment_seed == 99);
  CHECK(request.config.problem.height_severity == 3.0);
  CHECK(request.config.problem.min_height == 20.0);
  CHECK(request.config.edoa.subpop_count == 4);
}

TEST_CASE("cli subcommand list") {
  auto request = parse_cli({"list"});
  CHECK(request.list_only);
}

TEST_CASE("cli exit codes") {
  auto run_cli = [](std::vector<const char*> argv) {
    argv.insert(argv.begin(), "dopt");
    std::stringstream captured_out, captured_err;
    auto* old_out = std::cout.rdbuf(captured_out.rdbuf());
    auto* old_err = std::cerr.rdbuf(captured_err.rdbuf());
    const int code = cli_main(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    return std::pair<int, std::string>(code,
                                       captured_out.str() + captured_err.str());
  };

  SUBCASE("list prints every registered name and exits 0") {
    auto [code, text] = run_cli({"list"});
    CHECK(code == 0);
    for (const char* name : {"RPSO", "mQSO", "AmQSO", "DynDE", "MPB", "GMPB"}) {
      CAPTURE(name);
      CHECK(text.find(name) != std::string::npos);
    }
  }

  SUBCASE("education in five dimensions is a configuration error") {
    auto [code, text] = run_cli({"--emit-frames", "--dimension", "5"});
    CHECK(code == 2);
    CHECK(text.find("education mode requires dimension 2") !=
          std::string::npos);
  }

  SUBCASE("unknown flags are configuration errors") {
    auto [code, text] = run_cli({"--no-such-flag"});
    CHECK(code == 2);
  }

  SUBCASE("bad param values are configuration errors") {
    auto [code, text] = run_cli({"--param", "height-severity=abc"});
    CHECK(code == 2);
  }
}
