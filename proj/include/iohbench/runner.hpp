#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "iohbench/config.hpp"
#include "iohbench/logger.hpp"
#include "iohbench/random.hpp"
#include "iohbench/suite.hpp"

namespace iohbench {

/// What an algorithm sees of a run: a budgeted evaluation oracle, a parameter
/// staging slot that is attached to the next logged record, and its own
/// random stream.
class AlgorithmContext {
 public:
  /// `logger` may be null when nothing is recorded.
  AlgorithmContext(const InstancedProblem& problem, std::uint64_t max_budget, std::uint64_t seed,
                   RunLogger* logger = nullptr, bool stop_on_optimum = false);

  std::size_t dimension() const noexcept { return problem_.dimension(); }
  std::uint64_t max_budget() const noexcept { return max_budget_; }
  std::uint64_t evaluations() const noexcept { return evaluations_; }
  std::uint64_t remaining() const noexcept { return max_budget_ - evaluations_; }
  /// Budget spent, or the optimum was hit while stop_on_optimum is set.
  bool done() const noexcept { return evaluations_ >= max_budget_ || stopped_; }

  /// Returns the transformed value a*f(sigma(x xor z))+b. Throws
  /// BudgetExhausted once done().
  double evaluate(BitView x);
  void set_parameters(std::span<const double> values);
  void set_parameters(std::initializer_list<double> values) {
    set_parameters(std::span<const double>(values.begin(), values.size()));
  }

  SeededGenerator& random() noexcept { return random_; }
  std::optional<double> best_raw() const noexcept { return best_raw_; }

 private:
  const InstancedProblem& problem_;
  std::uint64_t max_budget_;
  SeededGenerator random_;
  RunLogger* logger_;
  bool stop_on_optimum_;
  bool stopped_ = false;
  std::uint64_t evaluations_ = 0;
  std::vector<double> staged_;
  std::optional<double> best_raw_;
};

/// Runs until ctx.done(); returns the best transformed value it saw.
using Algorithm = std::function<double(AlgorithmContext&)>;

struct RunOptions {
  std::uint64_t seed = 42;
  unsigned jobs = 0;  // 0 = available parallelism
};

struct ExperimentReport {
  std::filesystem::path result_folder;
  std::size_t runs = 0;
  std::map<std::pair<int, std::size_t>, std::size_t> runs_per_group;  // (function, dimension)
  std::vector<std::filesystem::path> info_files;
  std::vector<std::filesystem::path> data_files;
};

/// Seed of restart `restart` on (function, dimension, instance):
/// derive_seed({base, function, dimension, instance, restart}).
std::uint64_t run_seed(std::uint64_t base, int function_id, std::size_t dimension, int instance_id,
                       std::uint64_t restart);

/// Executes restarts x instances runs per (function, dimension) with
/// max_budget = budget_multiplier * dimension, writing the result folder.
ExperimentReport run_experiment(const ExperimentConfig& config, const Algorithm& algorithm,
                                const ProblemRegistry& registry, const RunOptions& options = {});

/// A single logged run, as run_experiment performs it.
struct RunOutput {
  std::array<std::string, 4> contents;  // per DataFile; empty when disabled
  RunSummary summary;
  double best_transformed = 0.0;
};
RunOutput execute_run(const InstancedProblem& problem, const ObserverConfig& observer,
                      std::uint64_t max_budget, std::uint64_t seed, const Algorithm& algorithm,
                      bool stop_on_optimum = false);

}  // namespace iohbench
