#include "dopt/runner.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>

namespace dopt {

namespace {

/// Shortest exact decimal form; round-trips to the same double.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> config_echo(
    const ExperimentConfig& config, const ExperimentOutcome& outcome) {
  const ProblemSpec& p = config.problem;
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("algorithm", config.algorithm);
  kv.emplace_back("benchmark", to_string(p.benchmark));
  kv.emplace_back("dimension", std::to_string(p.dimension));
  kv.emplace_back("peak_count", std::to_string(p.peak_count));
  kv.emplace_back("change_frequency", std::to_string(p.change_frequency));
  kv.emplace_back("shift_severity", fmt(p.shift_severity));
  kv.emplace_back("environment_count", std::to_string(p.environment_count));
  kv.emplace_back("run_count",
                  std::to_string(static_cast<int>(outcome.summary.runs.size())));
  kv.emplace_back("experiment_seed", std::to_string(config.experiment_seed));
  kv.emplace_back("benchmark_seed", std::to_string(outcome.benchmark_seed));
  kv.emplace_back("environment_digest",
                  std::to_string(outcome.environment_digest));
  kv.emplace_back("min_coordinate", fmt(p.bounds.lo));
  kv.emplace_back("max_coordinate", fmt(p.bounds.hi));
  kv.emplace_back("height_severity", fmt(p.height_severity));
  kv.emplace_back("min_height", fmt(p.min_height));
  kv.emplace_back("max_height", fmt(p.max_height));
  kv.emplace_back("width_severity", fmt(p.width_severity));
  kv.emplace_back("min_width", fmt(p.min_width));
  kv.emplace_back("max_width", fmt(p.max_width));
  if (p.benchmark == BenchmarkId::GMPB) {
    kv.emplace_back("tau_severity", fmt(p.tau_severity));
    kv.emplace_back("min_tau", fmt(p.min_tau));
    kv.emplace_back("max_tau", fmt(p.max_tau));
    kv.emplace_back("eta_severity", fmt(p.eta_severity));
    kv.emplace_back("min_eta", fmt(p.min_eta));
    kv.emplace_back("max_eta", fmt(p.max_eta));
    kv.emplace_back("angle_severity", fmt(p.angle_severity));
    kv.emplace_back("min_angle", fmt(p.min_angle));
    kv.emplace_back("max_angle", fmt(p.max_angle));
  }
  return kv;
}

void write_results_csv(const std::filesystem::path& path,
                       const ExperimentOutcome& outcome,
                       const ExperimentConfig& config) {
  const ExperimentSummary& s = outcome.summary;
  auto out = open_out(path);
  out << "run,offline_error,e_bbc\n";
  for (const RunResult& r : s.runs) {
    out << r.run_index << ',' << fmt(r.offline_error) << ','
        << fmt(r.error_before_change) << '\n';
  }
  out << "mean," << fmt(s.offline_error.mean) << ','
      << fmt(s.error_before_change.mean) << '\n';
  out << "median," << fmt(s.offline_error.median) << ','
      << fmt(s.error_before_change.median) << '\n';
  out << "standard_error," << fmt(s.offline_error.standard_error) << ','
      << fmt(s.error_before_change.standard_error) << '\n';
  out << '\n';
  for (const auto& [key, value] : config_echo(config, outcome)) {
    out << "# " << key << " = " << value << '\n';
  }
}

nlohmann::ordered_json config_json(const ExperimentConfig& config,
                                   const ExperimentOutcome& outcome) {
  const ProblemSpec& p = config.problem;
  nlohmann::ordered_json cfg;
  cfg["algorithm"] = config.algorithm;
  cfg["benchmark"] = to_string(p.benchmark);
  cfg["dimension"] = p.dimension;
  cfg["peak_count"] = p.peak_count;
  cfg["change_frequency"] = p.change_frequency;
  cfg["shift_severity"] = p.shift_severity;
  cfg["environment_count"] = p.environment_count;
  cfg["run_count"] = static_cast<int>(outcome.summary.runs.size());
  cfg["experiment_seed"] = config.experiment_seed;
  cfg["benchmark_seed"] = outcome.benchmark_seed;
  cfg["environment_digest"] = outcome.environment_digest;
  cfg["min_coordinate"] = p.bounds.lo;
  cfg["max_coordinate"] = p.bounds.hi;
  cfg["height_severity"] = p.height_severity;
  cfg["min_height"] = p.min_height;
  cfg["max_height"] = p.max_height;
  cfg["width_severity"] = p.width_severity;
  cfg["min_width"] = p.min_width;
  cfg["max_width"] = p.max_width;
  if (p.benchmark == BenchmarkId::GMPB) {
    cfg["tau_severity"] = p.tau_severity;
    cfg["min_tau"] = p.min_tau;
    cfg["max_tau"] = p.max_tau;
    cfg["eta_severity"] = p.eta_severity;
    cfg["min_eta"] = p.min_eta;
    cfg["max_eta"] = p.max_eta;
    cfg["angle_severity"] = p.angle_severity;
    cfg["min_angle"] = p.min_angle;
    cfg["max_angle"] = p.max_angle;
  }
  return cfg;
}

void write_summary_json(const std::filesystem::path& path,
                        const ExperimentOutcome& outcome,
                        const ExperimentConfig& config,
                        const OutputPaths& paths) {
  const ExperimentSummary& s = outcome.summary;
  nlohmann::ordered_json doc;
  doc["config"] = config_json(config, outcome);

  nlohmann::ordered_json per_run = nlohmann::ordered_json::array();
  for (const RunResult& r : s.runs) {
    per_run.push_back({{"run", r.run_index},
                       {"offline_error", r.offline_error},
                       {"e_bbc", r.error_before_change}});
  }
  doc["per_run"] = std::move(per_run);
  doc["statistics"] = {
      {"offline_error",
       {{"mean", s.offline_error.mean},
        {"median", s.offline_error.median},
        {"standard_error", s.offline_error.standard_error}}},
      {"e_bbc",
       {{"mean", s.error_before_change.mean},
        {"median", s.error_before_change.median},
        {"standard_error", s.error_before_change.standard_error}}},
  };
  nlohmann::ordered_json series;
  if (!paths.offline_series_csv.empty()) {
    series["offline_error"] = paths.offline_series_csv.filename().string();
    series["current_error"] = paths.current_series_csv.filename().string();
  }
  if (!paths.frames_jsonl.empty()) {
    series["frames"] = paths.frames_jsonl.filename().string();
  }
  if (!series.is_null()) doc["series"] = std::move(series);

  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_series_csv(const std::filesystem::path& path,
                      const std::vector<double>& values) {
  auto out = open_out(path);
  out << "fe,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i + 1) << ',' << fmt(values[i]) << '\n';
  }
}

void write_frames_jsonl(const std::filesystem::path& path,
                        const EducationRecorder& recorder) {
  auto out = open_out(path);
  for (const EducationFrame& f : recorder.frames()) {
    nlohmann::ordered_json line;
    line["env"] = f.env_index;
    line["iter"] = f.iteration;
    line["fe"] = f.fe_count;
    nlohmann::ordered_json positions = nlohmann::ordered_json::array();
    for (const Vector& p : f.positions) {
      positions.push_back({p[0], p[1]});
    }
    line["positions"] = std::move(positions);
    line["current_error"] = f.current_error;
    out << line.dump() << '\n';
  }
}

std::filesystem::path write_grid_file(const std::filesystem::path& dir,
                                      const std::string& stem,
                                      const EnvironmentSnapshot& snap) {
  std::filesystem::path path =
      dir / (stem + "_env" + std::to_string(snap.env_index) + "_grid.csv");
  auto out = open_out(path);
  out << "env,resolution,lo,hi\n";
  out << snap.env_index << ',' << snap.resolution << ',' << fmt(snap.lo) << ','
      << fmt(snap.hi) << '\n';
  for (int r = 0; r < snap.resolution; ++r) {
    for (int c = 0; c < snap.resolution; ++c) {
      out << fmt(snap.grid[static_cast<std::size_t>(r) *
                               static_cast<std::size_t>(snap.resolution) +
                           static_cast<std::size_t>(c)]);
      out << (c + 1 == snap.resolution ? '\n' : ',');
    }
  }
  return path;
}

}  // namespace

std::string current_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

OutputPaths write_outputs(const ExperimentOutcome& outcome,
                          const ExperimentConfig& config) {
  std::filesystem::create_directories(config.output_dir);
  const std::string ts =
      config.timestamp.empty() ? current_timestamp() : config.timestamp;
  const std::string stem =
      config.algorithm + "_" + to_string(config.problem.benchmark) + "_" + ts;

  OutputPaths paths;
  if (config.emit_error_series) {
    paths.offline_series_csv =
        config.output_dir / (stem + "_offline_error.csv");
    paths.current_series_csv =
        config.output_dir / (stem + "_current_error.csv");
    write_series_csv(paths.offline_series_csv,
                     outcome.summary.offline_error_series);
    write_series_csv(paths.current_series_csv,
                     outcome.summary.current_error_series);
  }
  if (config.emit_frames) {
    paths.frames_jsonl = config.output_dir / (stem + "_frames.jsonl");
    write_frames_jsonl(paths.frames_jsonl, outcome.education);
    for (const EnvironmentSnapshot& snap : outcome.education.snapshots()) {
      paths.grid_files.push_back(
          write_grid_file(config.output_dir, stem, snap));
    }
  }
  paths.results_csv = config.output_dir / (stem + ".csv");
  write_results_csv(paths.results_csv, outcome, config);
  paths.summary_json = config.output_dir / (stem + ".json");
  write_summary_json(paths.summary_json, outcome, config, paths);
  return paths;
}

}  // namespace dopt
