#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "iohbench/kernels.hpp"

using namespace iohbench;

namespace {

// Synthetic improvement traces: `runs` runs of `length` records each.
std::vector<Run> traces(std::size_t runs, std::size_t length) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::uint64_t> gap(1, 20);
  std::vector<Run> out(runs);
  for (auto& r : out) {
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < length; ++i) {
      e += gap(gen);
      LogRecord rec;
      rec.evaluations = e;
      rec.best_raw = static_cast<double>(i);
      r.records.push_back(rec);
    }
  }
  return out;
}

template <bool Parallel>
void BM_HittingTimes(benchmark::State& state) {
  const auto runs = traces(100, static_cast<std::size_t>(state.range(0)));
  std::vector<double> targets;
  for (std::int64_t t = 0; t < state.range(0); t += 4) targets.push_back(static_cast<double>(t));
  for (auto _ : state) {
    auto m = Parallel ? stats::hitting_times(runs, targets, Direction::maximize)
                      : stats::reference::hitting_times(runs, targets, Direction::maximize);
    benchmark::DoNotOptimize(m.times.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(targets.size() * runs.size()));
}

template <bool Parallel>
void BM_BudgetValues(benchmark::State& state) {
  const auto runs = traces(100, static_cast<std::size_t>(state.range(0)));
  std::vector<std::uint64_t> budgets;
  for (std::uint64_t b = 1; b < static_cast<std::uint64_t>(state.range(0)) * 10; b += 40) budgets.push_back(b);
  for (auto _ : state) {
    auto m = Parallel ? stats::budget_values(runs, budgets, Direction::maximize)
                      : stats::reference::budget_values(runs, budgets, Direction::maximize);
    benchmark::DoNotOptimize(m.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(budgets.size() * runs.size()));
}

}  // namespace

BENCHMARK(BM_HittingTimes<true>)->Arg(256)->Arg(4096);
BENCHMARK(BM_HittingTimes<false>)->Arg(256)->Arg(4096);
BENCHMARK(BM_BudgetValues<true>)->Arg(256)->Arg(4096);
BENCHMARK(BM_BudgetValues<false>)->Arg(256)->Arg(4096);

BENCHMARK_MAIN();
