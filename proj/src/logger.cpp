#include "iohbench/logger.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "iohbench/error.hpp"
#include "iohbench/numfmt.hpp"

namespace iohbench {

namespace fs = std::filesystem;

std::string_view extension(DataFile kind) {
  switch (kind) {
    case DataFile::dat: return ".dat";
    case DataFile::cdat: return ".cdat";
    case DataFile::idat: return ".idat";
    case DataFile::tdat: return ".tdat";
  }
  return "";
}

std::vector<std::uint64_t> time_trigger_budgets(std::uint64_t t,
                                                std::span<const std::uint64_t> v_list,
                                                std::uint64_t max_budget) {
  std::vector<std::uint64_t> out;
  for (auto v : v_list) {
    if (v == 0) continue;
    for (std::uint64_t b = v; b <= max_budget; b *= 10) {
      out.push_back(b);
      if (b > max_budget / 10) break;
    }
  }
  if (t > 0) {
    for (std::uint64_t i = 0;; ++i) {
      const double value = std::round(std::pow(10.0, static_cast<double>(i) / static_cast<double>(t)));
      if (value > static_cast<double>(max_budget)) break;
      out.push_back(static_cast<std::uint64_t>(value));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string data_header(std::span<const std::string> parameter_names) {
  std::string h =
      R"h("function evaluation" "current f(x)" "best-so-far f(x)" "current af(x)+b" "best af(x)+b")h";
  for (const auto& name : parameter_names) {
    h += " \"";
    h += name;
    h += '"';
  }
  return h;
}

std::string format_record(const LogRecord& r) {
  std::string line = std::to_string(r.evaluations);
  for (double v : {r.raw_value, r.best_raw, r.transformed_value, r.best_transformed}) {
    line += ' ';
    line += format_double(v);
  }
  for (double p : r.parameters) {
    line += ' ';
    line += format_double(p);
  }
  return line;
}

RunLogger::RunLogger(const ObserverConfig& config, int instance_id, std::uint64_t max_budget)
    : instance_id_(instance_id),
      parameter_count_(config.parameter_names.size()),
      interval_step_(config.interval_step),
      time_budgets_(time_trigger_budgets(config.target_triggers, config.base_evaluations, max_budget)) {
  enabled_[index(DataFile::dat)] = true;
  enabled_[index(DataFile::cdat)] = config.complete_triggers;
  enabled_[index(DataFile::idat)] = config.interval_step > 0;
  enabled_[index(DataFile::tdat)] = !time_budgets_.empty();

  const std::string header = data_header(config.parameter_names) + '\n';
  for (auto kind : kAllDataFiles) {
    if (enabled(kind)) buffers_[index(kind)] = header;
  }
  summary_.instance_id = instance_id;
}

void RunLogger::append(DataFile kind, const LogRecord& record) {
  auto& buf = buffers_[index(kind)];
  buf += format_record(record);
  buf += '\n';
  last_logged_[index(kind)] = record.evaluations;
  ++rows_[index(kind)];
}

void RunLogger::observe(std::uint64_t evaluations, double raw, double transformed,
                        std::span<const double> parameters) {
  if (finalized_) throw ConfigError("observe called after finalize");
  if (parameters.size() != parameter_count_) {
    throw ConfigError("got " + std::to_string(parameters.size()) + " parameter values but " +
                      std::to_string(parameter_count_) + " parameter names are configured");
  }
  if (last_ && evaluations <= last_->evaluations) {
    throw InputError("evaluation counts must be strictly increasing (" +
                     std::to_string(evaluations) + " after " + std::to_string(last_->evaluations) +
                     ")");
  }

  const bool improved = !last_ || raw > last_->best_raw;
  LogRecord rec;
  rec.evaluations = evaluations;
  rec.raw_value = raw;
  rec.transformed_value = transformed;
  rec.best_raw = last_ ? std::max(last_->best_raw, raw) : raw;
  rec.best_transformed = last_ ? std::max(last_->best_transformed, transformed) : transformed;
  rec.parameters.assign(parameters.begin(), parameters.end());
  const bool first = !last_;
  ++observations_;

  if (enabled(DataFile::cdat)) append(DataFile::cdat, rec);
  if (enabled(DataFile::idat) && (first || evaluations == 1 || evaluations % interval_step_ == 0)) {
    append(DataFile::idat, rec);
  }
  if (improved) append(DataFile::dat, rec);
  if (enabled(DataFile::tdat)) {
    while (next_budget_ < time_budgets_.size() && time_budgets_[next_budget_] < evaluations) {
      ++next_budget_;
    }
    if (next_budget_ < time_budgets_.size() && time_budgets_[next_budget_] == evaluations) {
      append(DataFile::tdat, rec);
    }
  }
  last_ = std::move(rec);
}

RunSummary RunLogger::finalize() {
  if (finalized_) return summary_;
  finalized_ = true;
  if (last_) {
    for (auto kind : {DataFile::dat, DataFile::tdat}) {
      if (enabled(kind) && last_logged_[index(kind)] != last_->evaluations) append(kind, *last_);
    }
    summary_.final_best = last_->best_raw;
  }
  summary_.instance_id = instance_id_;
  summary_.datapoint_count = rows_[index(DataFile::dat)];
  return summary_;
}

// ---- .info ------------------------------------------------------------------

std::string format_info_block(const InfoBlock& b) {
  std::string out = "suite = '" + b.suite_name + "', funcId = " + std::to_string(b.function_id) +
                    ", DIM = " + std::to_string(b.dimension) + ", algId = '" + b.algorithm_name +
                    "', version = '" + b.version + "'\n";
  out += "% " + b.algorithm_info + "\n";
  out += b.data_path;
  for (const auto& r : b.runs) {
    out += ", " + std::to_string(r.instance_id) + ":" + std::to_string(r.datapoint_count) + "|" +
           format_double(r.final_best);
  }
  out += "\n";
  return out;
}

fs::path info_file_name(int function_id, int first_instance) {
  return "IOHprofiler_f" + std::to_string(function_id) + "_i" + std::to_string(first_instance) +
         ".info";
}

fs::path data_file_name(int function_id, std::size_t dimension, int first_instance, DataFile kind) {
  const std::string f = std::to_string(function_id);
  return fs::path("data_f" + f) / ("IOHprofiler_f" + f + "_DIM" + std::to_string(dimension) + "_i" +
                                   std::to_string(first_instance) + std::string(extension(kind)));
}

void write_info(const fs::path& folder, int first_instance, const InfoBlock& block, bool append) {
  if (block.runs.empty()) throw InputError("write_info: at least one run is required");
  const fs::path path = folder / info_file_name(block.function_id, first_instance);
  std::ofstream out(path, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
  if (!out) throw IoError(path, "cannot open for writing");
  out << format_info_block(block);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace iohbench
