#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "iohbench/logger.hpp"

namespace iohbench {

enum class Direction { maximize, minimize };

/// True when `a` is at least as good as `b`.
inline bool meets(double a, double b, Direction d) { return d == Direction::maximize ? a >= b : a <= b; }
/// True when `a` is strictly better than `b`.
inline bool improves(double a, double b, Direction d) { return d == Direction::maximize ? a > b : a < b; }

/// One parsed run. Statistics use the best-so-far f(x) column (best_raw).
struct Run {
  int instance_id = 0;
  std::vector<LogRecord> records;
  RunSummary summary;

  double final_best() const { return records.back().best_raw; }
  std::uint64_t final_evaluations() const { return records.back().evaluations; }
};

struct DatasetKey {
  std::string algorithm;
  int function_id = 0;
  std::size_t dimension = 0;

  auto operator<=>(const DatasetKey&) const = default;
};

struct RunGroup {
  std::vector<std::string> parameter_names;
  std::vector<Run> runs;
};

struct RunDataset {
  std::map<DatasetKey, RunGroup> groups;
  Direction direction = Direction::maximize;

  bool empty() const { return groups.empty(); }
  std::size_t run_count() const;
};

struct LoadReport {
  struct Entry {
    DatasetKey key;
    std::size_t runs = 0;
    std::filesystem::path source;
    DataFile kind = DataFile::dat;
  };
  std::vector<Entry> entries;
  std::vector<std::string> warnings;

  /// One line per entry, e.g. "100 runs for the 100-dimensional version of
  /// function f2 (RANDOM_SEARCH)".
  std::vector<std::string> lines() const;
};

/// Loads every .info file below `folder` (recursively). Prefers .dat and
/// falls back to .cdat, .idat, .tdat. Count mismatches against .info become
/// report warnings; malformed lines raise ParseError.
RunDataset load_folder(const std::filesystem::path& folder, LoadReport* report = nullptr);

/// Loads several folders and merges them by (algorithm, function, dimension).
RunDataset load_folders(std::span<const std::filesystem::path> folders, LoadReport* report = nullptr);

/// Maximize when every run's best-so-far column is non-decreasing, minimize
/// when every run is non-increasing; constant runs are neutral and an
/// all-constant dataset is maximize. Throws IntegrityError on mixed data.
Direction detect_direction(const RunDataset& dataset);

/// Efficient mode: per run keep the first, the last and every strict
/// improvement; beyond `cap` rows keep only every ceil(count/cap)-th
/// improvement plus the endpoints. cap >= 2.
RunDataset trim_efficient(const RunDataset& dataset, std::size_t cap);

}  // namespace iohbench
