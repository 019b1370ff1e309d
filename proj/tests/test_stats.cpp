#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "iohbench/error.hpp"
#include "iohbench/kernels.hpp"
#include "iohbench/stats.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace iohbench;
using fixtures::make_dataset;
using fixtures::make_run;

namespace {

const iohbench::Run kTraj = make_run({{1, 3}, {5, 7}, {9, 10}});

std::vector<double> iota_samples(std::size_t r) {
  std::vector<double> s(r);
  std::iota(s.begin(), s.end(), 1.0);
  return s;
}

}  // namespace

TEST(HittingTime, Examples) {
  EXPECT_EQ(first_hitting_time(kTraj, 7), 5u);
  EXPECT_EQ(first_hitting_time(kTraj, 6.5), 5u);
  EXPECT_EQ(first_hitting_time(kTraj, 1), 1u);
  EXPECT_FALSE(first_hitting_time(kTraj, 11).has_value());
}

TEST(HittingTime, Minimization) {
  const auto r = make_run({{1, -3}, {5, -7}, {9, -10}});
  EXPECT_EQ(first_hitting_time(r, -7, Direction::minimize), 5u);
  EXPECT_EQ(first_hitting_time(r, 0, Direction::minimize), 1u);
  EXPECT_FALSE(first_hitting_time(r, -11, Direction::minimize).has_value());
}

TEST(BestValueAt, Examples) {
  EXPECT_EQ(best_value_at(kTraj, 4), 3);
  EXPECT_EQ(best_value_at(kTraj, 5), 7);
  EXPECT_EQ(best_value_at(kTraj, 9), 10);
  EXPECT_EQ(best_value_at(kTraj, 1000), 10);
  EXPECT_EQ(best_value_at(make_run({{4, 2}, {8, 3}}), 1), 2);
}

TEST(Percentile, Examples) {
  const auto s100 = iota_samples(100);
  EXPECT_EQ(percentile(s100, 50), 50);
  const auto s10 = iota_samples(10);
  EXPECT_EQ(percentile(s10, 100), 10);
  EXPECT_EQ(percentile(s10, 2), 1);
  EXPECT_THROW(percentile(std::vector<double>{}, 50), InputError);
}

TEST(Percentile, AnchorGrid) {
  for (std::size_t r : {1u, 3u, 10u, 100u}) {
    const auto s = iota_samples(r);
    double prev = -1;
    for (double p : {2.0, 5.0, 25.0, 50.0, 75.0, 95.0, 98.0, 100.0}) {
      const auto idx = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(p * static_cast<double>(r) / 100)));
      EXPECT_EQ(percentile(s, p), s[idx - 1]) << r << " " << p;
      EXPECT_GE(percentile(s, p), prev);
      prev = percentile(s, p);
    }
  }
}

TEST(Summary, ExcludesUnreached) {
  const auto ds = make_dataset({make_run({{1, 0}, {2, 5}}), make_run({{1, 0}, {4, 5}}), make_run({{1, 0}, {6, 5}})});
  AxisOptions axis;
  axis.grid = TargetGrid{5, 5, 1};
  auto t = fixed_target_table(ds, axis);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].summary.runs, 3u);
  EXPECT_EQ(t.rows[0].summary.mean, 4);
  // Median is the 50th percentile under the floor-index rule: index max(1, 1) of 3.
  EXPECT_EQ(t.rows[0].summary.median, 2);

  const auto ds2 = make_dataset({make_run({{1, 0}, {2, 5}}), make_run({{1, 0}, {4, 5}}), make_run({{1, 0}, {6, 1}})});
  t = fixed_target_table(ds2, axis);
  EXPECT_EQ(t.rows[0].summary.runs, 2u);
  EXPECT_EQ(t.rows[0].summary.mean, 3);

  axis.grid = TargetGrid{9, 9, 1};
  t = fixed_target_table(ds2, axis);
  EXPECT_EQ(t.rows[0].summary.runs, 0u);
  EXPECT_FALSE(t.rows[0].summary.mean.has_value());
  EXPECT_FALSE(t.rows[0].summary.quantiles.front().has_value());
}

TEST(Summary, FixedBudgetColumns) {
  const auto ds = make_dataset({make_run({{1, 1}, {3, 4}}), make_run({{1, 2}, {5, 9}})});
  AxisOptions axis;
  axis.budgets = std::vector<std::uint64_t>{1, 100};
  const auto t = fixed_budget_table(ds, axis);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].summary.mean, 1.5);
  EXPECT_EQ(t.rows[1].summary.mean, 6.5);
  EXPECT_EQ(t.rows[1].summary.runs, 2u);
}

TEST(RawSamples, SortedWithUnreachedLast) {
  const auto ds = make_dataset({make_run({{1, 0}, {9, 5}}), make_run({{1, 0}, {3, 5}}), make_run({{1, 0}})});
  AxisOptions axis;
  axis.grid = TargetGrid{5, 5, 1};
  const auto rows = raw_samples(ds, Perspective::fixed_target, axis);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].sorted, (std::vector<std::optional<double>>{3.0, 9.0, std::nullopt}));
}

TEST(Grid, Values) {
  EXPECT_EQ((TargetGrid{0, 100, 10}.values().size()), 11u);
  EXPECT_EQ((TargetGrid{0, 1, 0.1}.values().back()), 1.0);
  EXPECT_EQ((TargetGrid{0, 2, 1}.values(Direction::minimize)), (std::vector<double>{2, 1, 0}));
  EXPECT_THROW((TargetGrid{5, 1, 1}.validate()), InputError);
  EXPECT_THROW((TargetGrid{0, 1, 0}.validate()), InputError);
}

TEST(Grid, Defaults) {
  const auto ds = make_dataset({make_run({{1, 2}, {30, 12}}), make_run({{1, 4}, {70, 8}})});
  const auto g = default_grid(ds, 1, 10);
  EXPECT_EQ(g.f_min, 2);
  EXPECT_EQ(g.f_max, 12);
  EXPECT_EQ(g.step, 1);
  EXPECT_EQ(default_budgets(ds, 1, 10), (std::vector<std::uint64_t>{1, 2, 5, 10, 20, 50, 70}));
  EXPECT_EQ(default_max_budget(ds, 1, 10), 70u);
}

TEST(Ecdf, SingleRunStep) {
  const std::vector<iohbench::Run> runs{make_run({{1, 0}, {5, 1}})};
  const std::vector<double> targets{1};
  const auto k = ecdf_fixed_target(runs, targets);
  EXPECT_EQ(ecdf_at(k, 4), 0);
  EXPECT_EQ(ecdf_at(k, 5), 1);
}

TEST(Ecdf, FixedBudgetSingleRun) {
  const std::vector<iohbench::Run> runs{kTraj};
  const std::vector<std::uint64_t> b{6};
  const auto k = ecdf_fixed_budget(runs, b);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0].x, 7);
  EXPECT_EQ(k[0].y, 1);
  const std::vector<std::uint64_t> beyond{1000};
  EXPECT_EQ(ecdf_fixed_budget(runs, beyond).back().x, 10);
}

// 5 runs, 3 targets, every (i, j) pair enumerated.
TEST(Ecdf, PairEnumeration) {
  std::vector<iohbench::Run> runs;
  std::mt19937 gen(3);
  for (int i = 0; i < 5; ++i) {
    std::vector<std::pair<std::uint64_t, double>> pts;
    double v = 0;
    for (std::uint64_t e = 1; e <= 40; ++e) {
      if (gen() % 4 == 0) v += 1;
      pts.push_back({e, v});
    }
    runs.push_back(make_run(pts));
  }
  const std::vector<double> targets{2, 5, 9};
  const auto k = ecdf_fixed_target(runs, targets);
  for (std::uint64_t t = 0; t <= 45; ++t) {
    int hit = 0;
    for (const auto& r : runs) {
      for (double v : targets) {
        const auto h = first_hitting_time(r, v);
        if (h && *h <= t) ++hit;
      }
    }
    EXPECT_DOUBLE_EQ(ecdf_at(k, static_cast<double>(t)), hit / 15.0);
  }
}

TEST(Auc, IdealAndNothing) {
  const auto ideal = std::vector<iohbench::Run>{make_run({{1, 10}, {50, 10}}), make_run({{1, 10}})};
  const std::vector<double> targets{0, 5, 10};
  EXPECT_EQ(auc_normalized(ideal, targets, 100), 1.0);
  EXPECT_EQ(auc_normalized(ideal, targets, 1), 1.0);
  const std::vector<double> high{11, 20};
  EXPECT_EQ(auc_normalized(ideal, high, 100), 0.0);
}

TEST(Auc, HitAtFive) {
  const std::vector<iohbench::Run> runs{make_run({{1, 0}, {5, 1}})};
  const std::vector<double> targets{1};
  EXPECT_DOUBLE_EQ(auc_normalized(runs, targets, 10), 6.0 / 10.0);
}

TEST(Histogram, FreedmanDiaconis) {
  const auto s = iota_samples(27);
  const double w = fd_bin_width(s);
  EXPECT_NEAR(w, (percentile(s, 75) - percentile(s, 25)) / 3.0, 1e-12);
  std::vector<double> shifted(27, 0.0);
  for (std::size_t i = 0; i < 27; ++i) shifted[i] = i < 5 ? 0 : (i < 19 ? 10 : 18);  // Q25 = 10, Q75 = 18
  EXPECT_NEAR(fd_bin_width(shifted), 8.0 / 3.0, 1e-12);

  const std::vector<double> same(7, 4.0);
  const auto one = fd_histogram(same);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].count, 7u);
  EXPECT_THROW(fd_histogram(std::vector<double>{}), InputError);
}

TEST(Histogram, CountsSumToR) {
  std::mt19937 gen(11);
  std::normal_distribution<double> nd(100, 30);
  for (std::size_t r : {5u, 50u, 333u}) {
    std::vector<double> s(r);
    for (auto& x : s) x = std::round(nd(gen));
    const auto bins = fd_histogram(s);
    std::size_t total = 0;
    for (const auto& b : bins) total += b.count;
    EXPECT_EQ(total, r);
    for (const auto& b : bins) {
      const auto in = std::count_if(s.begin(), s.end(), [&](double x) {
        return (x >= b.lower && x < b.upper) || (&b == &bins.back() && x == b.upper);
      });
      EXPECT_EQ(static_cast<std::size_t>(in), b.count);
    }
  }
}

TEST(Pmf, SymmetricAndNormalized) {
  const std::vector<double> s{0, 10};
  const auto d = pmf_estimate(s);
  ASSERT_EQ(d.size(), 512u);
  EXPECT_EQ(d.front().x, 0);
  EXPECT_EQ(d.back().x, 10);
  double area = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_GE(d[i].density, 0);
    EXPECT_LT(std::fabs(d[i].density - d[d.size() - 1 - i].density), 1e-9);
    if (i > 0) area += (d[i].x - d[i - 1].x) * (d[i].density + d[i - 1].density) / 2;
  }
  EXPECT_NEAR(area, 1.0, 1e-6);
  EXPECT_THROW(pmf_estimate(std::vector<double>{1}), InputError);
  EXPECT_THROW(pmf_estimate(std::vector<double>{2, 2, 2}), InputError);
}

// Near-constant samples: mode of the estimate matches a direct kernel sum.
TEST(Pmf, ModeMatchesKernelSum) {
  const std::vector<double> s{100, 100, 100, 100.5, 99.5, 100, 101};
  const auto d = pmf_estimate(s);
  const double n = static_cast<double>(s.size());
  const double m = std::accumulate(s.begin(), s.end(), 0.0) / n;
  double ss = 0;
  for (double x : s) ss += (x - m) * (x - m);
  const double h = 1.06 * std::sqrt(ss / (n - 1)) * std::pow(n, -0.2);
  auto kde = [&](double x) {
    double sum = 0;
    for (double xi : s) sum += std::exp(-0.5 * (x - xi) * (x - xi) / (h * h));
    return sum;
  };
  const auto best = std::max_element(d.begin(), d.end(), [](auto& a, auto& b) { return a.density < b.density; });
  double oracle_mode = d.front().x, oracle_best = -1;
  for (const auto& p : d) {
    if (kde(p.x) > oracle_best) {
      oracle_best = kde(p.x);
      oracle_mode = p.x;
    }
  }
  EXPECT_EQ(best->x, oracle_mode);
  EXPECT_NEAR(best->x, m, 0.5);
  // Shape agrees up to the normalizing constant.
  const double scale = best->density / oracle_best;
  for (const auto& p : d) EXPECT_NEAR(p.density, scale * kde(p.x), 1e-9 * best->density);
}

TEST(ParameterTable, StaticValue) {
  const std::vector<double> p{0.3, 50};
  const auto ds = make_dataset({make_run({{1, 1}, {4, 3}, {9, 6}}, p), make_run({{1, 2}, {7, 6}}, p)}, "A", 1, 10,
                               {"rate", "pop"});
  AxisOptions axis;
  axis.grid = TargetGrid{1, 6, 1};
  const auto t = parameter_table(ds, "pop", axis);
  ASSERT_EQ(t.rows.size(), 6u);
  for (const auto& row : t.rows) {
    EXPECT_EQ(row.summary.mean, 50);
    EXPECT_EQ(row.summary.sd, 0);
  }
  EXPECT_THROW(parameter_table(ds, "lambda", axis), LookupError);
}

// Known answer: first-hit values 100, 200, 190 at target 5 average to 163.33.
TEST(ParameterTable, AdaptiveFixture) {
  const auto ds = make_dataset({make_run({{1, 1}}, {10}), make_run({{1, 1}}, {10}), make_run({{1, 1}}, {10})}, "A",
                               1, 10, {"lambda"});
  auto& runs = const_cast<RunDataset&>(ds).groups.begin()->second.runs;
  const double lam[3] = {100, 200, 190};
  for (int i = 0; i < 3; ++i) {
    LogRecord rec = runs[i].records[0];
    rec.evaluations = 10 + i;
    rec.best_raw = rec.raw_value = 5;
    rec.parameters = {lam[i]};
    runs[i].records.push_back(rec);
    rec.evaluations += 5;
    rec.parameters = {1};
    runs[i].records.push_back(rec);
  }
  AxisOptions axis;
  axis.grid = TargetGrid{5, 5, 1};
  const auto t = parameter_table(ds, "lambda", axis);
  EXPECT_NEAR(*t.rows[0].summary.mean, 490.0 / 3, 1e-12);
  EXPECT_EQ(t.rows[0].summary.median, 100);
}

TEST(Kernels, ParallelMatchesReference) {
  std::mt19937 gen(5);
  std::vector<iohbench::Run> runs;
  for (int i = 0; i < 37; ++i) {
    std::vector<std::pair<std::uint64_t, double>> pts;
    double v = 0;
    std::uint64_t e = 1;
    for (int k = 0; k < 60; ++k) {
      pts.push_back({e, v});
      e += 1 + gen() % 9;
      v += (gen() % 3) * 0.5;
    }
    runs.push_back(make_run(pts));
  }
  std::vector<double> targets;
  for (double v = -1; v <= 35; v += 0.25) targets.push_back(v);
  std::vector<std::uint64_t> budgets;
  for (std::uint64_t b = 1; b <= 400; b += 3) budgets.push_back(b);
  auto d = Direction::maximize;
  EXPECT_EQ(stats::hitting_times(runs, targets, d), stats::reference::hitting_times(runs, targets, d));
  EXPECT_EQ(stats::budget_values(runs, budgets, d), stats::reference::budget_values(runs, budgets, d));
  for (auto& r : runs) {
    for (auto& rec : r.records) rec.best_raw = -rec.best_raw;
  }
  for (auto& t : targets) t = -t;
  d = Direction::minimize;
  EXPECT_EQ(stats::hitting_times(runs, targets, d), stats::reference::hitting_times(runs, targets, d));
  EXPECT_EQ(stats::budget_values(runs, budgets, d), stats::reference::budget_values(runs, budgets, d));
}

// ---- oracle equivalence -------------------------------------------------------

namespace {

struct OracleCase {
  fixtures::SyntheticSpec spec;
  std::string parameter;
};

std::vector<OracleCase> oracle_cases() {
  std::vector<OracleCase> out;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    OracleCase c;
    c.spec.seed = seed;
    c.spec.functions = {static_cast<int>((seed - 1) % 4) + 1};
    c.spec.dimensions = {seed % 2 == 0 ? 8u : 6u};
    c.spec.ea = seed % 3 == 0;
    c.spec.algorithm = c.spec.ea ? "EA" : "WALK";
    c.parameter = c.spec.ea ? "mutation_rate" : "step";
    out.push_back(c);
  }
  return out;
}

// Best raw value of the first record reaching v; the oracle re-derives it from .cdat.
std::vector<double> reached(const std::vector<oracle::Trajectory>& runs, double v) {
  std::vector<double> s;
  for (const auto& r : runs) {
    const auto h = oracle::hitting_time(r, v);
    if (h != 0) s.push_back(static_cast<double>(h));
  }
  return s;
}

void expect_summary(const Summary& got, std::vector<double> samples, std::size_t runs_expected,
                    const std::string& where) {
  EXPECT_EQ(got.runs, runs_expected) << where;
  if (samples.empty()) {
    EXPECT_FALSE(got.mean.has_value()) << where;
    return;
  }
  ASSERT_TRUE(got.mean.has_value()) << where;
  EXPECT_TRUE(oracle::close(*got.mean, oracle::mean(samples))) << where;
  EXPECT_EQ(*got.median, oracle::pct(samples, 50)) << where;
  ASSERT_EQ(got.quantiles.size(), kDefaultPercentiles.size());
  for (std::size_t i = 0; i < kDefaultPercentiles.size(); ++i) {
    EXPECT_EQ(*got.quantiles[i], oracle::pct(samples, kDefaultPercentiles[i])) << where;
  }
}

}  // namespace

class OracleEquivalence : public ::testing::TestWithParam<int> {};

TEST_P(OracleEquivalence, AllStatistics) {
  const auto c = oracle_cases()[static_cast<std::size_t>(GetParam())];
  test_util::TempDir dir;
  fixtures::write_synthetic(dir.path(), c.spec);
  const auto ds = load_folder(dir.path());
  const auto traj = oracle::read_folder(dir.path());
  ASSERT_EQ(traj.size(), 1u);
  const auto& runs = traj.begin()->second;
  ASSERT_EQ(runs.size(), 20u);
  ASSERT_LE(runs.front().evals.size(), 200u);
  const std::uint64_t budget = runs.front().evals.back();

  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : runs) {
    lo = std::min(lo, r.current[0]);
    for (double v : r.current) hi = std::max(hi, v);
  }
  AxisOptions axis;
  axis.grid = TargetGrid{lo, hi, (hi - lo) / 10};
  axis.budgets = std::vector<std::uint64_t>{1, 2, 3, 5, 10, 25, 50, 100, budget};
  axis.max_budget = budget;
  const auto targets = axis.grid->values();
  ASSERT_EQ(targets.size(), 11u);

  // fixed-target table
  const auto ft = fixed_target_table(ds, axis);
  ASSERT_EQ(ft.rows.size(), targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    EXPECT_EQ(ft.rows[j].at, targets[j]);
    const auto s = reached(runs, targets[j]);
    expect_summary(ft.rows[j].summary, s, s.size(), "target " + std::to_string(targets[j]));
  }

  // fixed-budget table
  const auto fb = fixed_budget_table(ds, axis);
  ASSERT_EQ(fb.rows.size(), axis.budgets->size());
  for (std::size_t j = 0; j < fb.rows.size(); ++j) {
    std::vector<double> s;
    for (const auto& r : runs) s.push_back(oracle::value_at(r, (*axis.budgets)[j]));
    expect_summary(fb.rows[j].summary, s, runs.size(), "budget " + std::to_string((*axis.budgets)[j]));
  }

  // fixed-target ECDF at every integer budget
  const auto et = ecdf_fixed_target(ds, axis);
  ASSERT_EQ(et.size(), 1u);
  for (std::uint64_t t = 1; t <= budget; ++t) {
    EXPECT_TRUE(oracle::close(ecdf_at(et[0].knots, static_cast<double>(t)),
                              oracle::ecdf_target(runs, targets, static_cast<double>(t))))
        << t;
  }

  // fixed-budget ECDF at each knot and halfway between knots
  const auto eb = ecdf_fixed_budget(ds, axis);
  ASSERT_EQ(eb.size(), 1u);
  const auto& knots = eb[0].knots;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    EXPECT_TRUE(oracle::close(knots[i].y, oracle::ecdf_budget(runs, *axis.budgets, knots[i].x)));
    if (i > 0) {
      const double mid = (knots[i - 1].x + knots[i].x) / 2;
      EXPECT_TRUE(oracle::close(knots[i].y, oracle::ecdf_budget(runs, *axis.budgets, mid)));
    }
  }
  EXPECT_EQ(oracle::ecdf_budget(runs, *axis.budgets, knots.back().x + 1), 0.0);

  // AUC, aggregate and per target
  const auto auc = auc_table(ds, axis);
  ASSERT_EQ(auc.size(), targets.size() + 1);
  for (const auto& row : auc) {
    const std::vector<double> ts = row.target ? std::vector<double>{*row.target} : targets;
    EXPECT_TRUE(oracle::close(row.auc, oracle::auc(runs, ts, budget)));
  }

  // FD histogram counts
  const auto hist = histograms(ds, Perspective::fixed_target, axis);
  std::size_t with_samples = 0;
  for (double v : targets) with_samples += reached(runs, v).empty() ? 0 : 1;
  ASSERT_EQ(hist.size(), with_samples);
  for (const auto& block : hist) {
    const auto s = reached(runs, block.at);
    const double w = (oracle::pct(s, 75) - oracle::pct(s, 25)) / std::cbrt(static_cast<double>(s.size()));
    if (w > 0) {
      EXPECT_TRUE(oracle::close(block.bins[0].upper - block.bins[0].lower, w, 1e-9));
    } else {
      EXPECT_EQ(block.bins.size(), 1u);
    }
    const double lo_s = *std::min_element(s.begin(), s.end());
    for (std::size_t b = 0; b < block.bins.size(); ++b) {
      std::size_t count = 0;
      for (double x : s) {
        const auto k = w > 0 ? static_cast<std::size_t>(std::floor((x - lo_s) / w)) : 0;
        if (std::min(k, block.bins.size() - 1) == b) ++count;
      }
      EXPECT_EQ(block.bins[b].count, count);
    }
  }

  // parameter table: parameter value at the first evaluation reaching v
  const auto pt = parameter_table(ds, c.parameter, axis);
  ASSERT_EQ(pt.rows.size(), targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    std::vector<double> s;
    for (const auto& r : runs) {
      const auto i = oracle::hitting_index(r, targets[j]);
      if (i < r.evals.size()) s.push_back(r.params[i][0]);
    }
    expect_summary(pt.rows[j].summary, s, s.size(), "param " + std::to_string(targets[j]));
    if (s.size() >= 2) {
      EXPECT_TRUE(oracle::close(*pt.rows[j].summary.sd, oracle::sd(s)));
    }
  }
  if (!c.spec.ea) {
    const auto size = parameter_table(ds, "size", axis);
    for (const auto& row : size.rows) {
      if (row.summary.runs == 0) continue;
      EXPECT_EQ(row.summary.mean, 50);
      if (row.summary.runs >= 2) {
        EXPECT_EQ(row.summary.sd, 0);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Synthetic, OracleEquivalence, ::testing::Range(0, 10));

// ---- invariants ---------------------------------------------------------------

TEST(Invariants, Monotonicity) {
  test_util::TempDir dir;
  fixtures::SyntheticSpec spec;
  spec.functions = {2};
  spec.dimensions = {8};
  fixtures::write_synthetic(dir.path(), spec);
  const auto ds = load_folder(dir.path());
  const auto& runs = ds.groups.begin()->second.runs;
  for (const auto& r : runs) {
    std::optional<std::uint64_t> prev;
    for (double v = 0; v <= 8; v += 0.25) {
      const auto h = first_hitting_time(r, v);
      if (prev && h) {
        EXPECT_GE(*h, *prev);
      }
      if (h) prev = h;
    }
    double last = -INFINITY;
    for (std::uint64_t t = 1; t <= 210; ++t) {
      EXPECT_GE(best_value_at(r, t), last);
      last = best_value_at(r, t);
    }
  }
  const std::vector<double> targets{1, 2, 3, 4, 5, 6};
  const auto ft = ecdf_fixed_target(runs, targets);
  double y = 0;
  for (const auto& k : ft) {
    EXPECT_GE(k.y, y);
    EXPECT_LE(k.y, 1.0);
    y = k.y;
  }
  std::size_t reaching = 0;
  for (const auto& r : runs) {
    for (double v : targets) reaching += first_hitting_time(r, v) ? 1 : 0;
  }
  EXPECT_DOUBLE_EQ(ecdf_at(ft, 200), static_cast<double>(reaching) / static_cast<double>(runs.size() * 6));

  // The fixed-budget curve falls as the target value rises (maximization).
  const std::vector<std::uint64_t> budgets{1, 10, 100};
  const auto fb = ecdf_fixed_budget(runs, budgets);
  for (std::size_t i = 1; i < fb.size(); ++i) EXPECT_LE(fb[i].y, fb[i - 1].y);
  EXPECT_EQ(fb.front().y, 1.0);
}

TEST(Invariants, MinimizationMirrorsMaximization) {
  std::vector<iohbench::Run> up, down;
  std::mt19937 gen(2);
  for (int i = 0; i < 6; ++i) {
    std::vector<std::pair<std::uint64_t, double>> p, q;
    double v = 0;
    for (std::uint64_t e = 1; e <= 30; ++e) {
      v += gen() % 2;
      p.push_back({e, v});
      q.push_back({e, -v});
    }
    up.push_back(make_run(p));
    down.push_back(make_run(q));
  }
  const auto max_ds = make_dataset(up);
  const auto min_ds = make_dataset(down);
  ASSERT_EQ(min_ds.direction, Direction::minimize);
  AxisOptions ax, an;
  ax.grid = TargetGrid{0, 10, 1};
  an.grid = TargetGrid{-10, 0, 1};
  ax.max_budget = an.max_budget = 30;
  const auto a = fixed_target_table(max_ds, ax);
  const auto b = fixed_target_table(min_ds, an);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].at, -b.rows[i].at);
    EXPECT_EQ(a.rows[i].summary.mean, b.rows[i].summary.mean);
  }
  EXPECT_EQ(auc_table(max_ds, ax).front().auc, auc_table(min_ds, an).front().auc);
}

// Two algorithms whose hitting times are stochastically ordered: the slow one
// waits twice as long between improvements on a coupled random stream.
TEST(Scenario, DominatingCurveStaysAbove) {
  std::mt19937 gen(17);
  RunDataset ds;
  auto& fast_runs = ds.groups[DatasetKey{"fast", 1, 100}].runs;
  auto& slow_runs = ds.groups[DatasetKey{"slow", 1, 100}].runs;
  std::geometric_distribution<int> wait(0.05);
  for (int i = 0; i < 15; ++i) {
    std::vector<std::pair<std::uint64_t, double>> f{{1, 0}}, s{{1, 0}};
    std::uint64_t ef = 1, es = 1;
    for (int v = 1; v <= 100; ++v) {
      const auto w = 1 + static_cast<std::uint64_t>(wait(gen));
      ef += w;
      es += 2 * w;
      f.push_back({ef, static_cast<double>(v)});
      s.push_back({es, static_cast<double>(v)});
    }
    fast_runs.push_back(make_run(f));
    slow_runs.push_back(make_run(s));
  }
  ds.direction = detect_direction(ds);
  AxisOptions axis;
  axis.grid = TargetGrid{0, 100, 10};
  const auto curves = ecdf_fixed_target(ds, axis);
  ASSERT_EQ(curves.size(), 2u);
  const auto& fast = curves[0].key.algorithm == "fast" ? curves[0] : curves[1];
  const auto& slow = curves[0].key.algorithm == "fast" ? curves[1] : curves[0];
  for (double t = 1; t <= 10000; t += 1) EXPECT_GE(ecdf_at(fast.knots, t), ecdf_at(slow.knots, t));
  const auto auc = auc_table(ds, axis);
  double fast_auc = 0, slow_auc = 0;
  for (const auto& row : auc) {
    if (row.target) continue;
    (row.key.algorithm == "fast" ? fast_auc : slow_auc) = row.auc;
  }
  EXPECT_GT(fast_auc, slow_auc);
}
