#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "iohbench/dataset.hpp"

namespace iohbench::stats {

inline constexpr std::uint64_t kUnreached = 0;

/// Row-major [target][run] first-hitting times; kUnreached where never hit.
struct HitMatrix {
  std::size_t targets = 0;
  std::size_t runs = 0;
  std::vector<std::uint64_t> times;

  std::uint64_t at(std::size_t target, std::size_t run) const { return times[target * runs + run]; }
  bool operator==(const HitMatrix&) const = default;
};

/// Row-major [budget][run] best-so-far values.
struct ValueMatrix {
  std::size_t budgets = 0;
  std::size_t runs = 0;
  std::vector<double> values;

  double at(std::size_t budget, std::size_t run) const { return values[budget * runs + run]; }
  bool operator==(const ValueMatrix&) const = default;
};

/// Index of the first record whose best value meets `target`, or records.size().
std::size_t first_hit_index(const Run& run, double target, Direction direction);

// OpenMP kernels: one task per (target|budget, run) cell, binary search per cell.
HitMatrix hitting_times(std::span<const Run> runs, std::span<const double> targets, Direction direction);
ValueMatrix budget_values(std::span<const Run> runs, std::span<const std::uint64_t> budgets,
                          Direction direction);

// Serial linear-scan versions of the kernels above; kept as the reference the
// parallel kernels are tested and benchmarked against.
namespace reference {
HitMatrix hitting_times(std::span<const Run> runs, std::span<const double> targets, Direction direction);
ValueMatrix budget_values(std::span<const Run> runs, std::span<const std::uint64_t> budgets,
                          Direction direction);
}  // namespace reference

}  // namespace iohbench::stats
