#include "iohbench/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include <json.hpp>

#include "iohbench/error.hpp"
#include "iohbench/numfmt.hpp"

namespace iohbench {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    const auto item = trim(text.substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double number(std::string_view key, std::string_view text) {
  const auto v = parse_double(trim(text));
  if (!v || !std::isfinite(*v)) throw InputError("parameter '" + std::string(key) + "' is not a number");
  return *v;
}

std::int64_t integer(std::string_view key, std::string_view text, std::int64_t min) {
  const auto v = parse_int(trim(text));
  if (!v || *v < min) {
    throw InputError("parameter '" + std::string(key) + "' must be an integer >= " + std::to_string(min));
  }
  return *v;
}

Cell num(std::size_t v, int) { return static_cast<std::int64_t>(v); }
Cell opt(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

std::vector<Cell> key_cells(const DatasetKey& key) {
  return {key.algorithm, static_cast<std::int64_t>(key.function_id), static_cast<std::int64_t>(key.dimension)};
}

std::vector<std::string> key_columns() { return {"algId", "funcId", "DIM"}; }

std::string axis_column(Perspective p) { return p == Perspective::fixed_target ? "target" : "budget"; }

// Budgets are integers; print them as such.
Cell at_cell(Perspective p, double at) {
  if (p == Perspective::fixed_budget) return static_cast<std::int64_t>(at);
  return at;
}

Table stat_table(const StatTable& st) {
  Table t;
  t.columns = key_columns();
  if (!st.parameter.empty()) t.columns.push_back("parameter");
  t.columns.push_back(axis_column(st.perspective));
  for (const char* c : {"runs", "mean", "median"}) t.columns.emplace_back(c);
  if (st.with_sd) t.columns.emplace_back("sd");
  for (double p : st.levels) t.columns.push_back(format_double(p) + "%");
  for (const auto& r : st.rows) {
    auto row = key_cells(r.key);
    if (!st.parameter.empty()) row.emplace_back(st.parameter);
    row.push_back(at_cell(st.perspective, r.at));
    row.push_back(num(r.summary.runs, 0));
    row.push_back(opt(r.summary.mean));
    row.push_back(opt(r.summary.median));
    if (st.with_sd) row.push_back(opt(r.summary.sd));
    for (const auto& q : r.summary.quantiles) row.push_back(opt(q));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table samples_table(const std::vector<SampleRow>& rows, Perspective p, Orientation o) {
  Table t;
  t.columns = key_columns();
  t.columns.push_back(axis_column(p));
  if (o == Orientation::long_) {
    t.columns.emplace_back("rank");
    t.columns.emplace_back("value");
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.sorted.size(); ++k) {
        auto row = key_cells(r.key);
        row.push_back(at_cell(p, r.at));
        row.push_back(num(k + 1, 0));
        row.push_back(opt(r.sorted[k]));
        t.rows.push_back(std::move(row));
      }
    }
    return t;
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.sorted.size());
  for (std::size_t k = 1; k <= width; ++k) t.columns.push_back("run." + std::to_string(k));
  for (const auto& r : rows) {
    auto row = key_cells(r.key);
    row.push_back(at_cell(p, r.at));
    for (std::size_t k = 0; k < width; ++k) row.push_back(k < r.sorted.size() ? opt(r.sorted[k]) : Cell{});
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table curve_table(const std::vector<Curve>& curves, bool integer_x) {
  Table t;
  t.columns = key_columns();
  t.columns.emplace_back("x");
  t.columns.emplace_back("y");
  for (const auto& c : curves) {
    for (const auto& k : c.knots) {
      auto row = key_cells(c.key);
      row.push_back(integer_x ? Cell{static_cast<std::int64_t>(k.x)} : Cell{k.x});
      row.push_back(k.y);
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table auc_rows(const std::vector<AucRow>& rows) {
  Table t;
  t.columns = key_columns();
  t.columns.emplace_back("target");
  t.columns.emplace_back("auc");
  for (const auto& r : rows) {
    auto row = key_cells(r.key);
    row.push_back(opt(r.target));
    row.push_back(r.auc);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table histogram_rows(const std::vector<HistogramBlock>& blocks, Perspective p) {
  Table t;
  t.columns = key_columns();
  t.columns.push_back(axis_column(p));
  for (const char* c : {"lower", "upper", "count"}) t.columns.emplace_back(c);
  for (const auto& b : blocks) {
    for (const auto& bin : b.bins) {
      auto row = key_cells(b.key);
      row.push_back(at_cell(p, b.at));
      row.push_back(bin.lower);
      row.push_back(bin.upper);
      row.push_back(num(bin.count, 0));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table density_rows(const std::vector<DensityBlock>& blocks, Perspective p) {
  Table t;
  t.columns = key_columns();
  t.columns.push_back(axis_column(p));
  t.columns.emplace_back("x");
  t.columns.emplace_back("density");
  for (const auto& b : blocks) {
    for (const auto& pt : b.points) {
      auto row = key_cells(b.key);
      row.push_back(at_cell(p, b.at));
      row.push_back(pt.x);
      row.push_back(pt.density);
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return v;
        }
      },
      cell);
}

std::string to_csv(const Table& table) {
  std::string out;
  auto field = [&](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
      out += s;
      return;
    }
    out += '"';
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  };
  auto line = [&](const auto& cells, auto&& text) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      field(text(cells[i]));
    }
    out += "\r\n";
  };
  line(table.columns, [](const std::string& s) { return s; });
  for (const auto& row : table.rows) line(row, cell_text);
  return out;
}

Query parse_query(std::string_view statistic, const ParamMap& params) {
  Query q;
  q.statistic = std::string(statistic);
  if (std::find(kStatistics.begin(), kStatistics.end(), q.statistic) == kStatistics.end()) {
    throw LookupError("unknown statistic '" + q.statistic + "'");
  }
  std::optional<double> fmin, fmax, step;
  for (const auto& [key, value] : params) {
    if (key == "algorithms") {
      for (auto a : split_list(value)) q.selection.algorithms.emplace_back(a);
    } else if (key == "funcId") {
      for (auto f : split_list(value)) q.selection.functions.push_back(static_cast<int>(integer(key, f, 1)));
    } else if (key == "dim") {
      for (auto d : split_list(value)) q.selection.dimensions.push_back(static_cast<std::size_t>(integer(key, d, 1)));
    } else if (key == "fmin") {
      fmin = number(key, value);
    } else if (key == "fmax") {
      fmax = number(key, value);
    } else if (key == "step") {
      step = number(key, value);
    } else if (key == "budgets") {
      std::vector<std::uint64_t> b;
      for (auto item : split_list(value)) b.push_back(static_cast<std::uint64_t>(integer(key, item, 1)));
      if (b.empty()) throw InputError("parameter 'budgets' is empty");
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
      q.axis.budgets = std::move(b);
    } else if (key == "maxbudget") {
      q.axis.max_budget = static_cast<std::uint64_t>(integer(key, value, 1));
    } else if (key == "percentiles") {
      q.percentiles.clear();
      for (auto item : split_list(value)) {
        const double p = number(key, item);
        if (!(p > 0.0) || p > 100.0) throw InputError("percentiles must lie in (0, 100]");
        q.percentiles.push_back(p);
      }
    } else if (key == "perspective") {
      if (value == "target") {
        q.perspective = Perspective::fixed_target;
      } else if (value == "budget") {
        q.perspective = Perspective::fixed_budget;
      } else {
        throw InputError("perspective must be 'target' or 'budget'");
      }
    } else if (key == "orientation") {
      if (value == "wide") {
        q.orientation = Orientation::wide;
      } else if (value == "long") {
        q.orientation = Orientation::long_;
      } else {
        throw InputError("orientation must be 'wide' or 'long'");
      }
    } else if (key == "parameter") {
      q.parameter = value;
    } else if (key == "format") {
      if (value != "json" && value != "csv") throw InputError("format must be 'json' or 'csv'");
    } else {
      throw InputError("unknown query parameter '" + key + "'");
    }
  }
  if (fmin || fmax || step) {
    if (!fmin || !fmax || !step) throw InputError("fmin, fmax and step must be given together");
    q.axis.grid = TargetGrid{*fmin, *fmax, *step};
    q.axis.grid->validate();
  }
  if (q.statistic == "parameter-table" && q.parameter.empty()) {
    throw InputError("parameter-table needs a 'parameter'");
  }
  return q;
}

Table run_query(const RunDataset& ds, const Query& q) {
  const auto& s = q.statistic;
  if (s == "fixed-target-summary") return stat_table(fixed_target_table(ds, q.axis, q.selection, q.percentiles));
  if (s == "fixed-budget-summary") return stat_table(fixed_budget_table(ds, q.axis, q.selection, q.percentiles));
  if (s == "parameter-table") {
    return stat_table(parameter_table(ds, q.parameter, q.axis, q.selection, q.percentiles));
  }
  if (s == "raw-samples") {
    return samples_table(raw_samples(ds, q.perspective, q.axis, q.selection), q.perspective, q.orientation);
  }
  if (s == "ecdf-target") return curve_table(ecdf_fixed_target(ds, q.axis, q.selection), true);
  if (s == "ecdf-budget") return curve_table(ecdf_fixed_budget(ds, q.axis, q.selection), false);
  if (s == "auc") return auc_rows(auc_table(ds, q.axis, q.selection));
  if (s == "histogram") return histogram_rows(histograms(ds, q.perspective, q.axis, q.selection), q.perspective);
  if (s == "pmf") return density_rows(densities(ds, q.perspective, q.axis, q.selection), q.perspective);
  throw LookupError("unknown statistic '" + s + "'");
}

std::string to_json(const Table& table, const RunDataset& ds, const Query& q) {
  json params;
  params["algorithms"] = q.selection.algorithms;
  params["funcId"] = q.selection.functions;
  params["dim"] = q.selection.dimensions;
  params["percentiles"] = q.percentiles;
  params["perspective"] = q.perspective == Perspective::fixed_target ? "target" : "budget";
  params["orientation"] = q.orientation == Orientation::wide ? "wide" : "long";
  if (!q.parameter.empty()) params["parameter"] = q.parameter;

  // Grid and budgets actually used for every selected (function, dimension).
  json resolved = json::array();
  std::set<std::pair<int, std::size_t>> pairs;
  for (const auto& [key, group] : ds.groups) {
    if (q.selection.matches(key) && !group.runs.empty()) pairs.insert({key.function_id, key.dimension});
  }
  for (const auto& [fid, dim] : pairs) {
    const TargetGrid grid = q.axis.grid ? *q.axis.grid : default_grid(ds, fid, dim, q.selection);
    json r;
    r["funcId"] = fid;
    r["DIM"] = dim;
    r["fmin"] = grid.f_min;
    r["fmax"] = grid.f_max;
    r["step"] = grid.step;
    r["budgets"] = q.axis.budgets ? *q.axis.budgets : default_budgets(ds, fid, dim, q.selection);
    r["maxbudget"] = q.axis.max_budget ? *q.axis.max_budget : default_max_budget(ds, fid, dim, q.selection);
    resolved.push_back(std::move(r));
  }
  params["resolved"] = std::move(resolved);

  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  json out;
  out["statistic"] = q.statistic;
  out["columns"] = table.columns;
  out["rows"] = std::move(rows);
  out["params"] = std::move(params);
  return out.dump();
}

std::vector<ReportSpec> standard_reports(const RunDataset& ds, const ParamMap& common) {
  std::vector<ReportSpec> out;
  auto add = [&](std::string file, std::string statistic, ParamMap extra = {}) {
    ParamMap p = common;
    p.insert(extra.begin(), extra.end());
    out.push_back({std::move(file), std::move(statistic), std::move(p)});
  };
  add("fixed-target-summary.csv", "fixed-target-summary");
  add("fixed-budget-summary.csv", "fixed-budget-summary");
  add("raw-samples-target.csv", "raw-samples", {{"perspective", "target"}});
  add("raw-samples-budget.csv", "raw-samples", {{"perspective", "budget"}});
  add("ecdf-target.csv", "ecdf-target");
  add("ecdf-budget.csv", "ecdf-budget");
  add("auc.csv", "auc");
  add("histogram-target.csv", "histogram", {{"perspective", "target"}});
  add("histogram-budget.csv", "histogram", {{"perspective", "budget"}});
  add("pmf-target.csv", "pmf", {{"perspective", "target"}});
  add("pmf-budget.csv", "pmf", {{"perspective", "budget"}});
  std::set<std::string> names;
  for (const auto& [key, group] : ds.groups) names.insert(group.parameter_names.begin(), group.parameter_names.end());
  for (const auto& name : names) {
    std::string safe = name;
    for (char& c : safe) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
    }
    add("parameter-table-" + safe + ".csv", "parameter-table", {{"parameter", name}});
  }
  return out;
}

}  // namespace iohbench
