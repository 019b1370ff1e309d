#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iohbench {

inline constexpr std::string_view kVersion = "0.1.0";

struct ObserverConfig {
  std::filesystem::path result_folder;
  std::string observer_name = "PBO";
  std::string algorithm_name;
  std::string algorithm_info;
  std::vector<std::string> parameter_names;
  bool complete_triggers = false;
  std::uint64_t interval_step = 0;              // tau; 0 disables .idat
  std::uint64_t target_triggers = 0;            // t; 0 disables the 10^(i/t) family
  std::vector<std::uint64_t> base_evaluations;  // v-list; empty disables the v*10^i family
};

/// The four trigger-driven data-file families.
enum class DataFile { dat, cdat, idat, tdat };
inline constexpr std::array<DataFile, 4> kAllDataFiles = {DataFile::dat, DataFile::cdat,
                                                          DataFile::idat, DataFile::tdat};
std::string_view extension(DataFile kind);

struct LogRecord {
  std::uint64_t evaluations = 0;
  double raw_value = 0.0;
  double best_raw = 0.0;
  double transformed_value = 0.0;
  double best_transformed = 0.0;
  std::vector<double> parameters;

  bool operator==(const LogRecord&) const = default;
};

struct RunSummary {
  int instance_id = 0;
  std::uint64_t datapoint_count = 0;
  double final_best = 0.0;

  bool operator==(const RunSummary&) const = default;
};

/// Union of {v * 10^i} and {round(10^(i/t))} capped at max_budget, sorted, unique.
std::vector<std::uint64_t> time_trigger_budgets(std::uint64_t t,
                                                std::span<const std::uint64_t> v_list,
                                                std::uint64_t max_budget);

/// `"function evaluation" "current f(x)" ... "p1" ... "pk"`, no newline.
std::string data_header(std::span<const std::string> parameter_names);
/// One space-separated row, no newline.
std::string format_record(const LogRecord& record);

/// Observes one run and renders each enabled data-file family into memory.
/// Buffers start with the header line; the caller appends them to disk.
class RunLogger {
 public:
  RunLogger(const ObserverConfig& config, int instance_id, std::uint64_t max_budget);

  void observe(std::uint64_t evaluations, double raw, double transformed,
               std::span<const double> parameters);

  /// Appends the final record to .dat/.tdat when missing. Idempotent.
  RunSummary finalize();

  bool enabled(DataFile kind) const { return enabled_[index(kind)]; }
  const std::string& contents(DataFile kind) const { return buffers_[index(kind)]; }
  std::uint64_t observations() const { return observations_; }
  const std::optional<LogRecord>& last_record() const { return last_; }

 private:
  static std::size_t index(DataFile kind) { return static_cast<std::size_t>(kind); }
  void append(DataFile kind, const LogRecord& record);

  int instance_id_;
  std::size_t parameter_count_;
  std::uint64_t interval_step_;
  std::vector<std::uint64_t> time_budgets_;
  std::size_t next_budget_ = 0;

  std::array<bool, 4> enabled_{};
  std::array<std::string, 4> buffers_;
  std::array<std::uint64_t, 4> last_logged_{};  // evaluations of last row per family, 0 = none
  std::array<std::uint64_t, 4> rows_{};

  std::optional<LogRecord> last_;
  std::uint64_t observations_ = 0;
  bool finalized_ = false;
  RunSummary summary_;
};

/// One dimension's block of an .info file.
struct InfoBlock {
  std::string suite_name = "PBO";
  int function_id = 0;
  std::size_t dimension = 0;
  std::string algorithm_name;
  std::string algorithm_info;
  std::string version = std::string(kVersion);
  std::string data_path;  // relative to the folder holding the .info file
  std::vector<RunSummary> runs;
};

std::string format_info_block(const InfoBlock& block);

std::filesystem::path info_file_name(int function_id, int first_instance);
/// data_f{F}/IOHprofiler_f{F}_DIM{D}_i{I}.{ext}
std::filesystem::path data_file_name(int function_id, std::size_t dimension, int first_instance,
                                     DataFile kind);

/// Writes (or appends) one block to {folder}/IOHprofiler_f{F}_i{I}.info.
void write_info(const std::filesystem::path& folder, int first_instance, const InfoBlock& block,
                bool append);

}  // namespace iohbench
