#include "iohbench/runner.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iohbench/error.hpp"

namespace iohbench {

namespace fs = std::filesystem;

AlgorithmContext::AlgorithmContext(const InstancedProblem& problem, std::uint64_t max_budget,
                                   std::uint64_t seed, RunLogger* logger, bool stop_on_optimum)
    : problem_(problem),
      max_budget_(max_budget),
      random_(seed),
      logger_(logger),
      stop_on_optimum_(stop_on_optimum) {}

double AlgorithmContext::evaluate(BitView x) {
  if (done()) {
    throw BudgetExhausted("evaluate called after " + std::to_string(evaluations_) +
                          " evaluations (budget " + std::to_string(max_budget_) + ")");
  }
  const Evaluation ev = problem_.evaluate(x);
  ++evaluations_;
  if (logger_) logger_->observe(evaluations_, ev.raw, ev.transformed, staged_);
  if (!best_raw_ || ev.raw > *best_raw_) best_raw_ = ev.raw;
  const auto& optimum = problem_.problem().optimum_value;
  if (stop_on_optimum_ && optimum && ev.raw >= *optimum) stopped_ = true;
  return ev.transformed;
}

void AlgorithmContext::set_parameters(std::span<const double> values) {
  staged_.assign(values.begin(), values.end());
}

std::uint64_t run_seed(std::uint64_t base, int function_id, std::size_t dimension, int instance_id,
                       std::uint64_t restart) {
  return derive_seed({base, static_cast<std::uint64_t>(function_id), dimension,
                      static_cast<std::uint64_t>(instance_id), restart});
}

RunOutput execute_run(const InstancedProblem& problem, const ObserverConfig& observer,
                      std::uint64_t max_budget, std::uint64_t seed, const Algorithm& algorithm,
                      bool stop_on_optimum) {
  RunLogger logger(observer, problem.spec().instance_id, max_budget);
  AlgorithmContext ctx(problem, max_budget, seed, &logger, stop_on_optimum);
  RunOutput out;
  out.best_transformed = algorithm(ctx);
  out.summary = logger.finalize();
  for (auto kind : kAllDataFiles) {
    if (logger.enabled(kind)) out.contents[static_cast<std::size_t>(kind)] = logger.contents(kind);
  }
  return out;
}

namespace {

struct RunTask {
  int instance_id;
  std::uint64_t restart;
};

unsigned resolve_jobs(unsigned jobs) {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, const Algorithm& algorithm,
                                const ProblemRegistry& registry, const RunOptions& options) {
  if (!algorithm) throw InputError("run_experiment: no algorithm");
  if (config.function_ids.empty() || config.instance_ids.empty() || config.dimensions.empty()) {
    throw ConfigError("empty function, instance or dimension selection");
  }
  for (int fid : config.function_ids) {
    if (!registry.contains(fid)) throw LookupError("unknown function id " + std::to_string(fid));
  }

  const fs::path folder = config.observer.result_folder;
  std::error_code ec;
  fs::create_directories(folder, ec);
  if (ec || !fs::is_directory(folder)) throw IoError(folder, "cannot create result folder");

  std::vector<int> instances = config.instance_ids;
  std::sort(instances.begin(), instances.end());
  const int first_instance = instances.front();

  std::vector<RunTask> tasks;
  for (int inst : instances) {
    for (std::uint64_t r = 0; r < config.independent_restarts; ++r) tasks.push_back({inst, r});
  }

  const unsigned jobs = resolve_jobs(options.jobs);
  const std::size_t chunk = std::max<std::size_t>(16, 4 * static_cast<std::size_t>(jobs));

  ExperimentReport report;
  report.result_folder = folder;

  for (int fid : config.function_ids) {
    fs::create_directories(folder / ("data_f" + std::to_string(fid)), ec);
    if (ec) throw IoError(folder / ("data_f" + std::to_string(fid)), "cannot create folder");

    bool first_block = true;
    for (std::size_t dim : config.dimensions) {
      const std::uint64_t max_budget = config.budget_multiplier * dim;
      std::map<int, InstancedProblem> problems;
      for (int inst : instances) problems.emplace(inst, make_instance(registry, fid, inst, dim));

      std::array<std::ofstream, 4> files;
      std::vector<fs::path> paths(4);
      InfoBlock block;
      block.suite_name = config.suite_name;
      block.function_id = fid;
      block.dimension = dim;
      block.algorithm_name = config.observer.algorithm_name;
      block.algorithm_info = config.observer.algorithm_info;
      block.data_path = data_file_name(fid, dim, first_instance, DataFile::dat).generic_string();

      std::vector<RunOutput> outputs;
      for (std::size_t begin = 0; begin < tasks.size(); begin += chunk) {
        const std::size_t end = std::min(tasks.size(), begin + chunk);
        outputs.assign(end - begin, RunOutput{});
        std::vector<std::exception_ptr> errors(end - begin);
        const auto count = static_cast<std::int64_t>(end - begin);

#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (std::int64_t k = 0; k < count; ++k) {
          const RunTask& task = tasks[begin + static_cast<std::size_t>(k)];
          try {
            outputs[k] = execute_run(problems.at(task.instance_id), config.observer, max_budget,
                                     run_seed(options.seed, fid, dim, task.instance_id, task.restart),
                                     algorithm, config.stop_on_optimum);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
        for (auto& e : errors) {
          if (e) std::rethrow_exception(e);
        }

        for (auto& out : outputs) {
          for (auto kind : kAllDataFiles) {
            const auto i = static_cast<std::size_t>(kind);
            if (out.contents[i].empty()) continue;
            if (!files[i].is_open()) {
              paths[i] = folder / data_file_name(fid, dim, first_instance, kind);
              files[i].open(paths[i], std::ios::binary | std::ios::trunc);
              if (!files[i]) throw IoError(paths[i], "cannot open for writing");
              report.data_files.push_back(paths[i]);
            }
            files[i] << out.contents[i];
            if (!files[i]) throw IoError(paths[i], "write failed");
          }
          block.runs.push_back(out.summary);
        }
      }
      for (auto& f : files) {
        if (f.is_open()) f.close();
      }

      write_info(folder, first_instance, block, !first_block);
      if (first_block) report.info_files.push_back(folder / info_file_name(fid, first_instance));
      first_block = false;
      report.runs_per_group[{fid, dim}] = block.runs.size();
      report.runs += block.runs.size();
    }
  }
  return report;
}

}  // namespace iohbench
