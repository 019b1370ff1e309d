#include "iohbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <utility>

#include "iohbench/error.hpp"
#include "iohbench/logger.hpp"

namespace iohbench {

namespace {

constexpr std::size_t kMaxGridSize = 1'000'000;

using PairKey = std::pair<int, std::size_t>;

// Targets/budgets resolved once per (function, dimension).
class AxisResolver {
 public:
  AxisResolver(const RunDataset& ds, const AxisOptions& axis, const Selection& sel)
      : ds_(ds), axis_(axis), sel_(sel) {
    if (axis_.grid) axis_.grid->validate();
  }

  const std::vector<double>& targets(const DatasetKey& key) {
    const PairKey pk{key.function_id, key.dimension};
    auto it = targets_.find(pk);
    if (it == targets_.end()) {
      const TargetGrid grid = axis_.grid ? *axis_.grid : default_grid(ds_, pk.first, pk.second, sel_);
      it = targets_.emplace(pk, grid.values(ds_.direction)).first;
    }
    return it->second;
  }

  const std::vector<std::uint64_t>& budgets(const DatasetKey& key) {
    const PairKey pk{key.function_id, key.dimension};
    auto it = budgets_.find(pk);
    if (it == budgets_.end()) {
      auto b = axis_.budgets ? *axis_.budgets : default_budgets(ds_, pk.first, pk.second, sel_);
      it = budgets_.emplace(pk, std::move(b)).first;
    }
    return it->second;
  }

  std::uint64_t max_budget(const DatasetKey& key) {
    if (axis_.max_budget) return *axis_.max_budget;
    return default_max_budget(ds_, key.function_id, key.dimension, sel_);
  }

  std::vector<double> axis(const DatasetKey& key, Perspective p) {
    if (p == Perspective::fixed_target) return targets(key);
    const auto& b = budgets(key);
    return {b.begin(), b.end()};
  }

 private:
  const RunDataset& ds_;
  AxisOptions axis_;
  const Selection& sel_;
  std::map<PairKey, std::vector<double>> targets_;
  std::map<PairKey, std::vector<std::uint64_t>> budgets_;
};

template <typename Fn>
void for_selected(const RunDataset& ds, const Selection& sel, Fn&& fn) {
  for (const auto& [key, group] : ds.groups) {
    if (sel.matches(key) && !group.runs.empty()) fn(key, group);
  }
}

template <typename Fn>
void for_pair_runs(const RunDataset& ds, int fid, std::size_t dim, const Selection& sel, Fn&& fn) {
  for_selected(ds, sel, [&](const DatasetKey& key, const RunGroup& g) {
    if (key.function_id != fid || key.dimension != dim) return;
    for (const auto& r : g.runs) {
      if (!r.records.empty()) fn(r);
    }
  });
}

std::vector<double> reached_samples(const stats::HitMatrix& hits, std::size_t target) {
  std::vector<double> out;
  for (std::size_t i = 0; i < hits.runs; ++i) {
    const auto t = hits.at(target, i);
    if (t != stats::kUnreached) out.push_back(static_cast<double>(t));
  }
  return out;
}

std::vector<double> column(const stats::ValueMatrix& m, std::size_t budget) {
  return {m.values.begin() + static_cast<std::ptrdiff_t>(budget * m.runs),
          m.values.begin() + static_cast<std::ptrdiff_t>((budget + 1) * m.runs)};
}

}  // namespace

// ---- basics -------------------------------------------------------------------

void TargetGrid::validate() const {
  if (!std::isfinite(f_min) || !std::isfinite(f_max) || !std::isfinite(step)) {
    throw InputError("target grid values must be finite");
  }
  if (f_min > f_max) throw InputError("target grid: f_min > f_max");
  if (step <= 0.0) throw InputError("target grid: step must be positive");
  if ((f_max - f_min) / step >= static_cast<double>(kMaxGridSize)) {
    throw InputError("target grid: too many targets");
  }
}

std::vector<double> TargetGrid::values(Direction direction) const {
  validate();
  const auto count = static_cast<std::size_t>(std::floor((f_max - f_min) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = f_min + static_cast<double>(k) * step;
  const double tol = 1e-9 * std::max({1.0, std::fabs(f_max), std::fabs(f_min)});
  if (std::fabs(out.back() - f_max) <= tol) out.back() = f_max;
  if (out.back() > f_max) out.back() = f_max;
  if (direction == Direction::minimize) std::reverse(out.begin(), out.end());
  return out;
}

std::optional<std::uint64_t> first_hitting_time(const Run& run, double v, Direction direction) {
  const std::size_t k = stats::first_hit_index(run, v, direction);
  if (k >= run.records.size()) return std::nullopt;
  return run.records[k].evaluations;
}

double best_value_at(const Run& run, std::uint64_t t, Direction direction) {
  if (run.records.empty()) throw InputError("best_value_at: run without records");
  if (t < 1) throw InputError("best_value_at: budget must be >= 1");
  const std::uint64_t b = t;
  return stats::budget_values(std::span<const Run>(&run, 1), std::span<const std::uint64_t>(&b, 1), direction)
      .values.front();
}

double percentile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InputError("percentile: no samples");
  if (!(p > 0.0) || p > 100.0) throw InputError("percentile: p must lie in (0, 100]");
  const double r = static_cast<double>(sorted.size());
  auto index = static_cast<std::size_t>(std::floor(p * r / 100.0));
  index = std::clamp<std::size_t>(index, 1, sorted.size());
  return sorted[index - 1];
}

Summary summarize(std::vector<double> samples, std::span<const double> levels) {
  Summary s;
  s.runs = samples.size();
  s.quantiles.assign(levels.size(), std::nullopt);
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  s.mean = mean;
  s.median = percentile(samples, 50);
  if (samples.size() >= 2) {
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    s.sd = std::sqrt(ss / (n - 1.0));
  }
  for (std::size_t i = 0; i < levels.size(); ++i) s.quantiles[i] = percentile(samples, levels[i]);
  return s;
}

bool Selection::matches(const DatasetKey& key) const {
  auto has = [](const auto& list, const auto& v) {
    return list.empty() || std::find(list.begin(), list.end(), v) != list.end();
  };
  return has(algorithms, key.algorithm) && has(functions, key.function_id) && has(dimensions, key.dimension);
}

TargetGrid default_grid(const RunDataset& ds, int function_id, std::size_t dimension, const Selection& sel) {
  std::optional<double> lo, hi;
  for_pair_runs(ds, function_id, dimension, sel, [&](const Run& r) {
    const double first = r.records.front().best_raw;
    const double last = r.final_best();
    const double worst = ds.direction == Direction::maximize ? first : last;
    const double best = ds.direction == Direction::maximize ? last : first;
    lo = lo ? std::min(*lo, worst) : worst;
    hi = hi ? std::max(*hi, best) : best;
  });
  if (!lo) throw LookupError("no runs for f" + std::to_string(function_id) + " DIM " + std::to_string(dimension));
  TargetGrid g{*lo, *hi, (*hi - *lo) / 10.0};
  if (!(g.step > 0.0)) g.step = 1.0;
  return g;
}

std::uint64_t default_max_budget(const RunDataset& ds, int function_id, std::size_t dimension,
                                 const Selection& sel) {
  std::uint64_t m = 0;
  for_pair_runs(ds, function_id, dimension, sel, [&](const Run& r) { m = std::max(m, r.final_evaluations()); });
  if (m == 0) throw LookupError("no runs for f" + std::to_string(function_id) + " DIM " + std::to_string(dimension));
  return m;
}

std::vector<std::uint64_t> default_budgets(const RunDataset& ds, int function_id, std::size_t dimension,
                                           const Selection& sel) {
  const std::uint64_t m = default_max_budget(ds, function_id, dimension, sel);
  const std::vector<std::uint64_t> v = {1, 2, 5};
  auto b = time_trigger_budgets(0, v, m);
  if (b.empty() || b.back() != m) b.push_back(m);
  return b;
}

// ---- tables -------------------------------------------------------------------

StatTable fixed_target_table(const RunDataset& ds, const AxisOptions& axis, const Selection& sel,
                             std::span<const double> levels) {
  AxisResolver resolve(ds, axis, sel);
  StatTable table{Perspective::fixed_target, {levels.begin(), levels.end()}, false, {}, {}};
  for_selected(ds, sel, [&](const DatasetKey& key, const RunGroup& g) {
    const auto& targets = resolve.targets(key);
    const auto hits = stats::hitting_times(g.runs, targets, ds.direction);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      table.rows.push_back({key, targets[j], summarize(reached_samples(hits, j), levels)});
    }
  });
  return table;
}

StatTable fixed_budget_table(const RunDataset& ds, const AxisOptions& axis, const Selection& sel,
                             std::span<const double> levels) {
  AxisResolver resolve(ds, axis, sel);
  StatTable table{Perspective::fixed_budget, {levels.begin(), levels.end()}, false, {}, {}};
  for_selected(ds, sel, [&](const DatasetKey& key, const RunGroup& g) {
    const auto& budgets = resolve.budgets(key);
    const auto values = stats::budget_values(g.runs, budgets, ds.direction);
    for (std::size_t j = 0; j < budgets.size(); ++j) {
      table.rows.push_back({key, static_cast<double>(budgets[j]), summarize(column(values, j), levels)});
    }
  });
  return table;
}

StatTable parameter_table(const RunDataset& ds, const std::string& parameter, const AxisOptions& axis,
                          const Selection& sel, std::span<const double> levels) {
  AxisResolver resolve(ds, axis, sel);
  StatTable table{Perspective::fixed_target, {levels.begin(), levels.end()}, true, parameter, {}};
  bool found = false;
  for_selected(ds, sel, [&](const DatasetKey& key, const RunGroup& g) {
    const auto it = std::find(g.parameter_names.begin(), g.parameter_names.end(), parameter);
    if (it == g.parameter_names.end()) return;
    found = true;
    const auto p = static_cast<std::size_t>(it - g.parameter_names.begin());
    for (double v : resolve.targets(key)) {
      std::vector<double> samples;
      for (const auto& run : g.runs) {
        const std::size_t k = stats::first_hit_index(run, v, ds.direction);
        if (k < run.records.size()) samples.push_back(run.records[k].parameters[p]);
      }
      table.rows.push_back({key, v, summarize(std::move(samples), levels)});
    }
  });
  if (!found) throw LookupError("unknown parameter '" + parameter + "'");
  return table;
}

std::vector<SampleRow> raw_samples(const RunDataset& ds, Perspective perspective, const AxisOptions& axis,
                                   const Selection& sel) {
  AxisResolver resolve(ds, axis, sel);
  std::vector<SampleRow> rows;
  for_selected(ds, sel, [&](const DatasetKey& key, const RunGroup& g) {
    if (perspective == Perspective::fixed_target) {
      const auto& targets = resolve.targets(key);
      const auto hits = stats::hitting_times(g.runs, targets, ds.direction);
      for (std::size_t j = 0; j < targets.size(); ++j) {
        auto reached = reached_samples(hits, j);
        std::sort(reached.begin(), reached.end());
        SampleRow row{key, targets[j], {reached.begin(), reached.end()}};
        row.sorted.resize(g.runs.size(), std::nullopt);
        rows.push_back(std::move(row));
      }
    } else {
      const auto& budgets = resolve.budgets(key);
      const auto values = stats::budget_values(g.runs, budgets, ds.direction);
      for (std::size_t j = 0; j < budgets.size(); ++j) {
        auto col = column(values, j);
        std::sort(col.begin(), col.end());
        rows.push_back({key, static_cast<double>(budgets[j]), {col.begin(), col.end()}});
      }
    }
  });
  return rows;
}

// ---- curves -------------------------------------------------------------------

std::vector<Knot> ecdf_fixed_target(std::span<const Run> runs, std::span<const double> targets,
                                    Direction direction) {
  if (targets.empty()) throw InputError("ecdf: no targets");
  if (runs.empty()) return {};
  const auto hits = stats::hitting_times(runs, targets, direction);
  std::vector<std::uint64_t> times;
  for (auto t : hits.times) {
    if (t != stats::kUnreached) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  const double pairs = static_cast<double>(hits.times.size());
  std::vector<Knot> knots;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i + 1 < times.size() && times[i + 1] == times[i]) continue;
    knots.push_back({static_cast<double>(times[i]), static_cast<double>(i + 1) / pairs});
  }
  return knots;
}

std::vector<Knot> ecdf_fixed_budget(std::span<const Run> runs, std::span<const std::uint64_t> budgets,
                                    Direction direction) {
  if (budgets.empty()) throw InputError("ecdf: no budgets");
  if (runs.empty()) return {};
  auto values = stats::budget_values(runs, budgets, direction).values;
  std::sort(values.begin(), values.end());
  const double pairs = static_cast<double>(values.size());
  std::vector<Knot> knots;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    // maximize: pairs with V >= values[i] are those from i on; minimize: those before j.
    const double n = direction == Direction::maximize ? static_cast<double>(values.size() - i)
                                                      : static_cast<double>(j);
    knots.push_back({values[i], n / pairs});
    i = j;
  }
  return knots;
}

double ecdf_at(std::span<const Knot> knots, double t) {
  auto it = std::upper_bound(knots.begin(), knots.end(), t, [](double v, const Knot& k) { return v < k.x; });
  if (it == knots.begin()) return 0.0;
  return std::prev(it)->y;
}

std::vector<Curve> ecdf_fixed_target(const RunDataset& ds, const AxisOptions& axis, const Selection& sel) {
  AxisResolver resolve(ds, axis, sel);
  std::vector<Curve> out;
  for_selected(ds, sel, [&](const DatasetKey& key, const RunGroup& g) {
    out.push_back({key, ecdf_fixed_target(g.runs, resolve.targets(key), ds.direction)});
  });
  return out;
}

std::vector<Curve> ecdf_fixed_budget(const RunDataset& ds, const AxisOptions& axis, const Selection& sel) {
  AxisResolver resolve(ds, axis, sel);
  std::vector<Curve> out;
  for_selected(ds, sel, [&](const DatasetKey& key, const RunGroup& g) {
    out.push_back({key, ecdf_fixed_budget(g.runs, resolve.budgets(key), ds.direction)});
  });
  return out;
}

double auc_normalized(std::span<const Run> runs, std::span<const double> targets, std::uint64_t max_budget,
                      Direction direction) {
  if (max_budget < 1) throw InputError("auc: max_budget must be >= 1");
  if (targets.empty() || runs.empty()) return 0.0;
  const auto hits = stats::hitting_times(runs, targets, direction);
  long double area = 0.0L;
  for (auto h : hits.times) {
    if (h != stats::kUnreached && h <= max_budget) area += static_cast<long double>(max_budget - h + 1);
  }
  const long double pairs = static_cast<long double>(hits.times.size());
  return static_cast<double>(area / (pairs * static_cast<long double>(max_budget)));
}

std::vector<AucRow> auc_table(const RunDataset& ds, const AxisOptions& axis, const Selection& sel) {
  AxisResolver resolve(ds, axis, sel);
  std::vector<AucRow> rows;
  for_selected(ds, sel, [&](const DatasetKey& key, const RunGroup& g) {
    const auto& targets = resolve.targets(key);
    const std::uint64_t budget = resolve.max_budget(key);
    rows.push_back({key, std::nullopt, auc_normalized(g.runs, targets, budget, ds.direction)});
    for (double v : targets) {
      rows.push_back({key, v, auc_normalized(g.runs, std::span<const double>(&v, 1), budget, ds.direction)});
    }
  });
  return rows;
}

// ---- distributions ------------------------------------------------------------

double fd_bin_width(std::span<const double> samples) {
  if (samples.empty()) throw InputError("histogram: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = percentile(sorted, 75) - percentile(sorted, 25);
  return iqr / std::cbrt(static_cast<double>(sorted.size()));
}

std::vector<Bin> fd_histogram(std::span<const double> samples) {
  const double w = fd_bin_width(samples);
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(w > 0.0)) return {Bin{lo, hi, samples.size()}};
  const double nbins = std::floor((hi - lo) / w) + 1.0;
  if (nbins > static_cast<double>(kMaxGridSize)) throw InputError("histogram: too many bins");
  const auto k = static_cast<std::size_t>(nbins);
  std::vector<Bin> bins(k);
  for (std::size_t i = 0; i < k; ++i) {
    bins[i].lower = lo + static_cast<double>(i) * w;
    bins[i].upper = lo + static_cast<double>(i + 1) * w;
  }
  for (double s : samples) {
    auto idx = static_cast<std::size_t>(std::floor((s - lo) / w));
    if (idx >= k) idx = k - 1;
    // Floating-point edge: keep s inside [lower, upper).
    while (idx > 0 && s < bins[idx].lower) --idx;
    while (idx + 1 < k && s >= bins[idx].upper) ++idx;
    ++bins[idx].count;
  }
  return bins;
}

double silverman_bandwidth(std::span<const double> samples) {
  if (samples.size() < 2) throw InputError("density: need at least two samples");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return 1.06 * sd * std::pow(n, -0.2);
}

std::vector<DensityPoint> pmf_estimate(std::span<const double> samples, std::size_t points) {
  if (samples.size() < 2) throw InputError("density: need at least two samples");
  if (points < 2) throw InputError("density: need at least two grid points");
  const double h = silverman_bandwidth(samples);
  if (!(h > 0.0)) throw InputError("density: samples have no spread");

  std::map<double, double> weights;
  for (double s : samples) weights[s] += 1.0;
  const double lo = weights.begin()->first;
  const double hi = weights.rbegin()->first;
  const double n = static_cast<double>(samples.size());
  const double norm = 1.0 / (h * n * std::sqrt(2.0 * std::numbers::pi));

  std::vector<DensityPoint> out(points);
  const double dx = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + static_cast<double>(i) * dx;
    double d = 0.0;
    for (const auto& [xk, wk] : weights) {
      const double u = (x - xk) / h;
      d += wk * std::exp(-0.5 * u * u);
    }
    out[i] = {x, d * norm};
  }
  double area = 0.0;
  for (std::size_t i = 1; i < points; ++i) {
    area += 0.5 * (out[i].density + out[i - 1].density) * (out[i].x - out[i - 1].x);
  }
  for (auto& p : out) p.density /= area;
  return out;
}

namespace {

template <typename Fn>
void for_sample_sets(const RunDataset& ds, Perspective perspective, const AxisOptions& axis,
                     const Selection& sel, Fn&& fn) {
  AxisResolver resolve(ds, axis, sel);
  for_selected(ds, sel, [&](const DatasetKey& key, const RunGroup& g) {
    if (perspective == Perspective::fixed_target) {
      const auto& targets = resolve.targets(key);
      const auto hits = stats::hitting_times(g.runs, targets, ds.direction);
      for (std::size_t j = 0; j < targets.size(); ++j) fn(key, targets[j], reached_samples(hits, j));
    } else {
      const auto& budgets = resolve.budgets(key);
      const auto values = stats::budget_values(g.runs, budgets, ds.direction);
      for (std::size_t j = 0; j < budgets.size(); ++j) fn(key, static_cast<double>(budgets[j]), column(values, j));
    }
  });
}

}  // namespace

std::vector<HistogramBlock> histograms(const RunDataset& ds, Perspective perspective, const AxisOptions& axis,
                                       const Selection& sel) {
  std::vector<HistogramBlock> out;
  for_sample_sets(ds, perspective, axis, sel, [&](const DatasetKey& key, double at, std::vector<double> s) {
    if (!s.empty()) out.push_back({key, at, fd_histogram(s)});
  });
  return out;
}

std::vector<DensityBlock> densities(const RunDataset& ds, Perspective perspective, const AxisOptions& axis,
                                    const Selection& sel) {
  std::vector<DensityBlock> out;
  for_sample_sets(ds, perspective, axis, sel, [&](const DatasetKey& key, double at, std::vector<double> s) {
    if (s.size() < 2) return;
    if (std::all_of(s.begin(), s.end(), [&](double x) { return x == s.front(); })) return;
    out.push_back({key, at, pmf_estimate(s)});
  });
  return out;
}

}  // namespace iohbench
