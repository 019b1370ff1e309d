#include "iohbench/kernels.hpp"

#include <algorithm>

#include "iohbench/error.hpp"

namespace iohbench::stats {

std::size_t first_hit_index(const Run& run, double target, Direction direction) {
  const auto& recs = run.records;
  const auto it = std::partition_point(recs.begin(), recs.end(), [&](const LogRecord& r) {
    return !meets(r.best_raw, target, direction);
  });
  return static_cast<std::size_t>(it - recs.begin());
}

namespace {

double value_at_budget(const Run& run, std::uint64_t budget) {
  const auto& recs = run.records;
  auto it = std::upper_bound(recs.begin(), recs.end(), budget,
                             [](std::uint64_t b, const LogRecord& r) { return b < r.evaluations; });
  if (it == recs.begin()) return recs.front().best_raw;
  return std::prev(it)->best_raw;
}

void require_records(std::span<const Run> runs) {
  for (const auto& r : runs) {
    if (r.records.empty()) throw InputError("run without records");
  }
}

}  // namespace

HitMatrix hitting_times(std::span<const Run> runs, std::span<const double> targets, Direction direction) {
  require_records(runs);
  HitMatrix m{targets.size(), runs.size(), std::vector<std::uint64_t>(targets.size() * runs.size())};
  const auto n_targets = static_cast<std::int64_t>(targets.size());
  const auto n_runs = static_cast<std::int64_t>(runs.size());
#pragma omp parallel for collapse(2) schedule(static)
  for (std::int64_t j = 0; j < n_targets; ++j) {
    for (std::int64_t i = 0; i < n_runs; ++i) {
      const Run& run = runs[static_cast<std::size_t>(i)];
      const std::size_t k = first_hit_index(run, targets[static_cast<std::size_t>(j)], direction);
      m.times[static_cast<std::size_t>(j * n_runs + i)] =
          k < run.records.size() ? run.records[k].evaluations : kUnreached;
    }
  }
  return m;
}

ValueMatrix budget_values(std::span<const Run> runs, std::span<const std::uint64_t> budgets,
                          Direction /*direction*/) {
  require_records(runs);
  ValueMatrix m{budgets.size(), runs.size(), std::vector<double>(budgets.size() * runs.size())};
  const auto n_budgets = static_cast<std::int64_t>(budgets.size());
  const auto n_runs = static_cast<std::int64_t>(runs.size());
#pragma omp parallel for collapse(2) schedule(static)
  for (std::int64_t j = 0; j < n_budgets; ++j) {
    for (std::int64_t i = 0; i < n_runs; ++i) {
      m.values[static_cast<std::size_t>(j * n_runs + i)] =
          value_at_budget(runs[static_cast<std::size_t>(i)], budgets[static_cast<std::size_t>(j)]);
    }
  }
  return m;
}

namespace reference {

HitMatrix hitting_times(std::span<const Run> runs, std::span<const double> targets, Direction direction) {
  require_records(runs);
  HitMatrix m{targets.size(), runs.size(), std::vector<std::uint64_t>(targets.size() * runs.size(), kUnreached)};
  for (std::size_t j = 0; j < targets.size(); ++j) {
    for (std::size_t i = 0; i < runs.size(); ++i) {
      for (const auto& rec : runs[i].records) {
        if (meets(rec.best_raw, targets[j], direction)) {
          m.times[j * runs.size() + i] = rec.evaluations;
          break;
        }
      }
    }
  }
  return m;
}

ValueMatrix budget_values(std::span<const Run> runs, std::span<const std::uint64_t> budgets,
                          Direction direction) {
  require_records(runs);
  ValueMatrix m{budgets.size(), runs.size(), std::vector<double>(budgets.size() * runs.size())};
  for (std::size_t j = 0; j < budgets.size(); ++j) {
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& recs = runs[i].records;
      double best = recs.front().best_raw;
      for (const auto& rec : recs) {
        if (rec.evaluations > budgets[j]) break;
        if (improves(rec.best_raw, best, direction)) best = rec.best_raw;
      }
      m.values[j * runs.size() + i] = best;
    }
  }
  return m;
}

}  // namespace reference

}  // namespace iohbench::stats
