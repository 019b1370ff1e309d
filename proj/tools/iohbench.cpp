#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "iohbench/algorithms.hpp"
#include "iohbench/config.hpp"
#include "iohbench/error.hpp"
#include "iohbench/numfmt.hpp"
#include "iohbench/report.hpp"
#include "iohbench/runner.hpp"
#include "iohbench/service.hpp"

namespace fs = std::filesystem;
using namespace iohbench;

namespace {

constexpr int kUsage = 2;

struct RunArgs {
  std::string config;
  std::string algorithm;
  std::uint64_t seed = 42;
  unsigned jobs = 0;
  std::size_t lambda = 1;
};

struct ProcessArgs {
  std::vector<std::string> folders;
  std::string out;
  std::optional<double> fmin, fmax, step;
  std::string budgets;
  std::string percentiles;
  std::string algorithms;
  std::optional<std::uint64_t> maxbudget;
  std::optional<std::size_t> efficient;
  // export only
  std::string statistic;
  std::string perspective;
  std::string orientation;
  std::string parameter;
};

struct ServeArgs {
  std::vector<std::string> folders;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string assets;
  std::uint64_t max_upload_mb = 512;
};

int cmd_run(const RunArgs& a) {
  if (!fs::is_regular_file(a.config)) {
    std::cerr << "iohbench: config file not found: " << a.config << "\n";
    return kUsage;
  }
  ExperimentConfig config;
  Algorithm algorithm;
  try {
    config = load_config(a.config);
    algorithm = make_algorithm(a.algorithm, AlgorithmOptions{a.lambda});
  } catch (const Error& e) {
    std::cerr << "iohbench: " << e.what() << "\n";
    return kUsage;
  }
  const auto report = run_experiment(config, algorithm, ProblemRegistry::with_builtins(), RunOptions{a.seed, a.jobs});
  std::cout << "result folder: " << report.result_folder.string() << "\n";
  for (const auto& [group, count] : report.runs_per_group) {
    std::cout << "  f" << group.first << " DIM " << group.second << ": " << count << " runs\n";
  }
  std::cout << "total runs: " << report.runs << "\n";
  return 0;
}

ParamMap common_params(const ProcessArgs& a) {
  ParamMap p;
  if (a.fmin) p["fmin"] = format_double(*a.fmin);
  if (a.fmax) p["fmax"] = format_double(*a.fmax);
  if (a.step) p["step"] = format_double(*a.step);
  if (!a.budgets.empty()) p["budgets"] = a.budgets;
  if (!a.percentiles.empty()) p["percentiles"] = a.percentiles;
  if (!a.algorithms.empty()) p["algorithms"] = a.algorithms;
  if (a.maxbudget) p["maxbudget"] = std::to_string(*a.maxbudget);
  return p;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError(path, "write failed");
}

int cmd_process(const ProcessArgs& a, bool single) {
  std::vector<fs::path> loaded;
  for (const auto& folder : a.folders) {
    try {
      LoadReport probe;
      load_folder(folder, &probe);
      loaded.emplace_back(folder);
    } catch (const Error& e) {
      std::cerr << "iohbench: skipping " << folder << ": " << e.what() << "\n";
    }
  }
  if (loaded.empty()) {
    std::cerr << "iohbench: no folder could be loaded\n";
    return 1;
  }
  LoadReport report;
  RunDataset ds = load_folders(loaded, &report);
  if (a.efficient) ds = trim_efficient(ds, *a.efficient);
  for (const auto& line : report.lines()) std::cerr << line << "\n";
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";

  const ParamMap common = common_params(a);
  std::vector<ReportSpec> specs;
  if (single) {
    ParamMap p = common;
    if (!a.perspective.empty()) p["perspective"] = a.perspective;
    if (!a.orientation.empty()) p["orientation"] = a.orientation;
    if (!a.parameter.empty()) p["parameter"] = a.parameter;
    specs.push_back({a.statistic + ".csv", a.statistic, p});
  } else {
    specs = standard_reports(ds, common);
  }

  // Validate every query before touching the output directory.
  std::vector<Query> queries;
  for (const auto& s : specs) queries.push_back(parse_query(s.statistic, s.params));

  if (single && a.out == "-") {
    std::cout << to_csv(run_query(ds, queries.front()));
    return 0;
  }
  const fs::path out_dir(a.out);
  fs::create_directories(out_dir);
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    write_file(out_dir / specs[i].file, to_csv(run_query(ds, queries[i])));
    files.push_back({{"file", specs[i].file}, {"statistic", specs[i].statistic}, {"params", specs[i].params}});
  }
  nlohmann::json manifest;
  manifest["folders"] = a.folders;
  manifest["loaded"] = std::vector<std::string>(loaded.begin(), loaded.end());
  manifest["efficient"] = a.efficient ? nlohmann::json(*a.efficient) : nlohmann::json(nullptr);
  manifest["report"] = report.lines();
  manifest["warnings"] = report.warnings;
  manifest["files"] = files;
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  std::cout << "wrote " << specs.size() << " tables to " << out_dir.string() << "\n";
  return 0;
}

int cmd_serve(const ServeArgs& a) {
  ServiceOptions options;
  options.max_upload_bytes = a.max_upload_mb << 20;
  if (!a.assets.empty()) options.assets = fs::path(a.assets);
  Service service(options);
  for (const auto& folder : a.folders) {
    try {
      const auto entry = service.load_path(folder);
      std::cout << entry->id << ": " << folder << "\n";
      for (const auto& line : entry->report.lines()) std::cout << "  " << line << "\n";
    } catch (const Error& e) {
      std::cerr << "iohbench: skipping " << folder << ": " << e.what() << "\n";
    }
  }
  std::cout << "listening on http://" << a.host << ":" << a.port << std::endl;
  if (!service.listen(a.host, a.port)) {
    std::cerr << "iohbench: cannot listen on " << a.host << ":" << a.port << "\n";
    return 1;
  }
  return 0;
}

void add_process_flags(CLI::App* cmd, ProcessArgs& a) {
  cmd->add_option("folders", a.folders, "Result folders")->required();
  cmd->add_option("--fmin", a.fmin, "Smallest target");
  cmd->add_option("--fmax", a.fmax, "Largest target");
  cmd->add_option("--step", a.step, "Target spacing");
  cmd->add_option("--budgets", a.budgets, "Comma-separated budgets");
  cmd->add_option("--percentiles", a.percentiles, "Comma-separated percentiles");
  cmd->add_option("--algorithms", a.algorithms, "Comma-separated algorithm ids");
  cmd->add_option("--maxbudget", a.maxbudget, "AUC budget range");
  cmd->add_option("--efficient", a.efficient, "Trim runs to at most CAP records")->check(CLI::Range(2, 1 << 30));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark runner and performance-data processor"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment from an INI configuration");
  run_cmd->add_option("--config", run.config, "Configuration file")->required();
  run_cmd->add_option("--algorithm", run.algorithm, "random-search or one-plus-lambda-ea")->required();
  run_cmd->add_option("--seed", run.seed, "Base seed")->capture_default_str();
  run_cmd->add_option("--jobs", run.jobs, "Parallel runs (0 = all cores)")->capture_default_str();
  run_cmd->add_option("--lambda", run.lambda, "Offspring per generation for the EA")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ProcessArgs process;
  auto* process_cmd = app.add_subcommand("process", "Write every statistic table as CSV");
  add_process_flags(process_cmd, process);
  process_cmd->add_option("--out", process.out, "Output directory")->required();

  ProcessArgs exp;
  auto* export_cmd = app.add_subcommand("export", "Write one statistic table as CSV");
  add_process_flags(export_cmd, exp);
  export_cmd->add_option("--out", exp.out, "Output directory, or - for stdout")->required();
  export_cmd->add_option("--statistic", exp.statistic, "Statistic name")
      ->required()
      ->check(CLI::IsMember(kStatistics));
  export_cmd->add_option("--perspective", exp.perspective, "target or budget")
      ->check(CLI::IsMember({"target", "budget"}));
  export_cmd->add_option("--orientation", exp.orientation, "wide or long")->check(CLI::IsMember({"wide", "long"}));
  export_cmd->add_option("--parameter", exp.parameter, "Parameter for parameter-table");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("folders", serve.folders, "Result folders to preload");
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port)->check(CLI::Range(0, 65535))->capture_default_str();
  serve_cmd->add_option("--assets", serve.assets, "Built dashboard directory");
  serve_cmd->add_option("--max-upload-mb", serve.max_upload_mb)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*process_cmd) return cmd_process(process, false);
    if (*export_cmd) return cmd_process(exp, true);
    if (*serve_cmd) return cmd_serve(serve);
  } catch (const InputError& e) {
    std::cerr << "iohbench: " << e.what() << "\n";
    return kUsage;
  } catch (const LookupError& e) {
    std::cerr << "iohbench: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "iohbench: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
