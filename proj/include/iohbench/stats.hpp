#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iohbench/dataset.hpp"
#include "iohbench/kernels.hpp"

namespace iohbench {

/// Evenly spaced targets {f_min, f_min + step, ...} up to f_max inclusive.
struct TargetGrid {
  double f_min = 0.0;
  double f_max = 0.0;
  double step = 1.0;

  /// Throws InputError when f_min > f_max or step <= 0.
  void validate() const;
  /// Ascending for maximization, descending for minimization.
  std::vector<double> values(Direction direction = Direction::maximize) const;
};

enum class Perspective { fixed_target, fixed_budget };

/// T(run, v): evaluations until the best-so-far value first meets v.
std::optional<std::uint64_t> first_hitting_time(const Run& run, double v,
                                                Direction direction = Direction::maximize);
/// V(run, t): best-so-far value after t evaluations. Before the first logged
/// record this is the first record's value.
double best_value_at(const Run& run, std::uint64_t t, Direction direction = Direction::maximize);

/// sorted[max(1, floor(p r / 100)) - 1]; p in (0, 100].
double percentile(std::span<const double> sorted, double p);

inline const std::vector<double> kDefaultPercentiles = {2, 5, 10, 25, 50, 75, 90, 95, 98};

struct Summary {
  std::size_t runs = 0;
  std::optional<double> mean;
  std::optional<double> median;
  std::optional<double> sd;  // sample standard deviation, needs 2 samples
  std::vector<std::optional<double>> quantiles;
};

Summary summarize(std::vector<double> samples, std::span<const double> levels);

/// Empty vectors select everything.
struct Selection {
  std::vector<std::string> algorithms;
  std::vector<int> functions;
  std::vector<std::size_t> dimensions;

  bool matches(const DatasetKey& key) const;
};

/// Grid and budgets applied to every selected (function, dimension); unset
/// values fall back to default_grid / default_budgets of that pair.
struct AxisOptions {
  std::optional<TargetGrid> grid;
  std::optional<std::vector<std::uint64_t>> budgets;
  std::optional<std::uint64_t> max_budget;  // AUC integration range
};

/// f_min/f_max = observed worst initial and best final value, step = range / 10.
TargetGrid default_grid(const RunDataset& ds, int function_id, std::size_t dimension,
                        const Selection& selection = {});
/// {1, 2, 5, 10, 20, 50, ...} up to the largest logged evaluation count, plus that count.
std::vector<std::uint64_t> default_budgets(const RunDataset& ds, int function_id, std::size_t dimension,
                                           const Selection& selection = {});
std::uint64_t default_max_budget(const RunDataset& ds, int function_id, std::size_t dimension,
                                 const Selection& selection = {});

// ---- tables -------------------------------------------------------------------

struct StatRow {
  DatasetKey key;
  double at = 0.0;  // target or budget
  Summary summary;
};

struct StatTable {
  Perspective perspective = Perspective::fixed_target;
  std::vector<double> levels;
  bool with_sd = false;
  std::string parameter;  // set for parameter tables
  std::vector<StatRow> rows;
};

/// Per (algorithm, target): runs reaching it, mean and percentiles of their
/// hitting times. Unreached runs are excluded from the statistics.
StatTable fixed_target_table(const RunDataset& ds, const AxisOptions& axis = {},
                             const Selection& selection = {},
                             std::span<const double> levels = kDefaultPercentiles);

/// Per (algorithm, budget): statistics of V over all runs.
StatTable fixed_budget_table(const RunDataset& ds, const AxisOptions& axis = {},
                             const Selection& selection = {},
                             std::span<const double> levels = kDefaultPercentiles);

/// Per (algorithm, target): statistics of the named parameter in the first
/// record reaching the target, over reaching runs, with standard deviation.
StatTable parameter_table(const RunDataset& ds, const std::string& parameter, const AxisOptions& axis = {},
                          const Selection& selection = {},
                          std::span<const double> levels = kDefaultPercentiles);

struct SampleRow {
  DatasetKey key;
  double at = 0.0;
  std::vector<std::optional<double>> sorted;  // ascending, unreached last
};

std::vector<SampleRow> raw_samples(const RunDataset& ds, Perspective perspective,
                                   const AxisOptions& axis = {}, const Selection& selection = {});

// ---- curves -------------------------------------------------------------------

struct Knot {
  double x = 0.0;
  double y = 0.0;
};

struct Curve {
  DatasetKey key;
  std::vector<Knot> knots;
};

/// Fixed-target ECDF over budgets: y at knot t is the fraction of
/// (run, target) pairs hit within t evaluations. Right-continuous steps; 0
/// before the first knot.
std::vector<Knot> ecdf_fixed_target(std::span<const Run> runs, std::span<const double> targets,
                                    Direction direction = Direction::maximize);
/// Fixed-budget ECDF over target values: y at knot v is the fraction of
/// (run, budget) pairs whose value V meets v. For maximization the curve is
/// non-increasing; y(v) for v between knots equals y at the next knot up.
std::vector<Knot> ecdf_fixed_budget(std::span<const Run> runs, std::span<const std::uint64_t> budgets,
                                    Direction direction = Direction::maximize);
/// Value of a fixed-target ECDF at budget t.
double ecdf_at(std::span<const Knot> knots, double t);

std::vector<Curve> ecdf_fixed_target(const RunDataset& ds, const AxisOptions& axis = {},
                                     const Selection& selection = {});
std::vector<Curve> ecdf_fixed_budget(const RunDataset& ds, const AxisOptions& axis = {},
                                     const Selection& selection = {});

/// Area under the fixed-target ECDF summed over integer budgets 1..max_budget,
/// divided by max_budget (the ideal algorithm's area).
double auc_normalized(std::span<const Run> runs, std::span<const double> targets, std::uint64_t max_budget,
                      Direction direction = Direction::maximize);

struct AucRow {
  DatasetKey key;
  std::optional<double> target;  // empty for the aggregate over the whole grid
  double auc = 0.0;
};
std::vector<AucRow> auc_table(const RunDataset& ds, const AxisOptions& axis = {},
                              const Selection& selection = {});

// ---- distributions ------------------------------------------------------------

struct Bin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

/// Freedman-Diaconis width (Q75 - Q25) / r^(1/3) with the percentile estimator.
double fd_bin_width(std::span<const double> samples);
/// Bins [min + k w, min + (k+1) w); a single [min, max] bin when w = 0.
std::vector<Bin> fd_histogram(std::span<const double> samples);

struct DensityPoint {
  double x = 0.0;
  double density = 0.0;
};

/// Silverman bandwidth 1.06 sd r^(-1/5).
double silverman_bandwidth(std::span<const double> samples);
/// Gaussian kernel density on `points` equally spaced abscissae over
/// [min, max], normalized to unit trapezoid area there. Equal samples are
/// merged into one weighted kernel.
std::vector<DensityPoint> pmf_estimate(std::span<const double> samples, std::size_t points = 512);

struct HistogramBlock {
  DatasetKey key;
  double at = 0.0;
  std::vector<Bin> bins;
};
struct DensityBlock {
  DatasetKey key;
  double at = 0.0;
  std::vector<DensityPoint> points;
};

/// Samples per (algorithm, target|budget): reached hitting times or V values.
std::vector<HistogramBlock> histograms(const RunDataset& ds, Perspective perspective,
                                       const AxisOptions& axis = {}, const Selection& selection = {});
/// As histograms(); blocks with fewer than two distinct samples are omitted.
std::vector<DensityBlock> densities(const RunDataset& ds, Perspective perspective,
                                    const AxisOptions& axis = {}, const Selection& selection = {});

}  // namespace iohbench
