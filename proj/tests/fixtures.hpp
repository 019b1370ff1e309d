#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "iohbench/algorithms.hpp"
#include "iohbench/dataset.hpp"
#include "iohbench/runner.hpp"

namespace fixtures {

using namespace iohbench;

// Random walk that accepts every move, so current values go up and down.
// Logs a step size in 1..5 and a constant 50.
inline double wandering(AlgorithmContext& ctx) {
  auto& rng = ctx.random();
  BitString x(ctx.dimension());
  for (auto& b : x) b = rng.uniform() < 0.3 ? 1 : 0;
  double best = -1e300;
  while (!ctx.done()) {
    const double step = 1.0 + static_cast<double>(rng.below(5));
    ctx.set_parameters({step, 50.0});
    best = std::max(best, ctx.evaluate(x));
    const auto flips = static_cast<std::size_t>(step) % 3 + 1;
    for (std::size_t k = 0; k < flips; ++k) {
      const auto i = rng.below(x.size());
      x[i] ^= 1;
    }
  }
  return best;
}

struct SyntheticSpec {
  std::string algorithm = "WALK";
  std::vector<int> functions = {1};
  std::vector<std::size_t> dimensions = {6};
  std::vector<int> instances = {1, 2, 3, 4};
  std::uint64_t restarts = 5;       // 20 runs
  std::uint64_t multiplier = 25;    // budget 150 for n = 6
  std::uint64_t seed = 1;
  bool ea = false;
};

inline ExperimentReport write_synthetic(const std::filesystem::path& folder, const SyntheticSpec& s) {
  ExperimentConfig c;
  c.function_ids = s.functions;
  c.instance_ids = s.instances;
  c.dimensions = s.dimensions;
  c.budget_multiplier = s.multiplier;
  c.independent_restarts = s.restarts;
  c.observer.result_folder = folder;
  c.observer.algorithm_name = s.algorithm;
  c.observer.complete_triggers = true;
  c.observer.interval_step = 10;
  c.observer.target_triggers = 3;
  c.observer.base_evaluations = {1, 2, 5};
  Algorithm algo;
  if (s.ea) {
    c.observer.parameter_names = {"mutation_rate", "l"};
    algo = make_algorithm("one-plus-lambda-ea");
  } else {
    c.observer.parameter_names = {"step", "size"};
    algo = wandering;
  }
  return run_experiment(c, algo, ProblemRegistry::with_builtins(), RunOptions{s.seed, 1});
}

// In-memory run from (evaluations, best) pairs; current = best.
inline Run make_run(std::vector<std::pair<std::uint64_t, double>> points, std::vector<double> params = {}) {
  Run r;
  r.instance_id = 1;
  for (const auto& [e, v] : points) {
    LogRecord rec;
    rec.evaluations = e;
    rec.raw_value = rec.best_raw = rec.transformed_value = rec.best_transformed = v;
    rec.parameters = params;
    r.records.push_back(rec);
  }
  r.summary = {1, r.records.size(), r.records.empty() ? 0.0 : r.records.back().best_raw};
  return r;
}

inline RunDataset make_dataset(std::vector<Run> runs, std::string alg = "A", int fid = 1, std::size_t dim = 10,
                               std::vector<std::string> params = {}) {
  RunDataset ds;
  auto& g = ds.groups[DatasetKey{alg, fid, dim}];
  g.parameter_names = std::move(params);
  g.runs = std::move(runs);
  ds.direction = detect_direction(ds);
  return ds;
}

}  // namespace fixtures
