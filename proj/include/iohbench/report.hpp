#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iohbench/dataset.hpp"
#include "iohbench/stats.hpp"

namespace iohbench {

/// Empty cell, integer, real or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& cell);

/// RFC 4180: header row, CRLF line ends, fields quoted when needed.
std::string to_csv(const Table& table);

/// Query parameters as they arrive from a URL query string or CLI flags.
using ParamMap = std::map<std::string, std::string>;

inline const std::vector<std::string> kStatistics = {
    "fixed-target-summary", "fixed-budget-summary", "raw-samples", "ecdf-target", "ecdf-budget",
    "auc",                  "histogram",            "pmf",         "parameter-table"};

enum class Orientation { wide, long_ };

struct Query {
  std::string statistic;
  Selection selection;
  AxisOptions axis;
  std::vector<double> percentiles = kDefaultPercentiles;
  Perspective perspective = Perspective::fixed_target;
  Orientation orientation = Orientation::wide;
  std::string parameter;
};

/// Recognized keys: algorithms, funcId, dim, fmin, fmax, step, budgets,
/// maxbudget, percentiles, perspective (target|budget), orientation
/// (wide|long), parameter, format. Unknown keys and malformed values throw
/// InputError; an unknown statistic throws LookupError.
Query parse_query(std::string_view statistic, const ParamMap& params);

Table run_query(const RunDataset& dataset, const Query& query);

/// Table plus the resolved parameters, JSON fields named after the CSV columns.
std::string to_json(const Table& table, const RunDataset& dataset, const Query& query);

/// The files written by `iohbench process`: file name -> (statistic, params).
struct ReportSpec {
  std::string file;
  std::string statistic;
  ParamMap params;
};
std::vector<ReportSpec> standard_reports(const RunDataset& dataset, const ParamMap& common);

}  // namespace iohbench
