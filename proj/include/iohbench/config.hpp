#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "iohbench/logger.hpp"

namespace iohbench {

struct ExperimentConfig {
  std::string suite_name = "PBO";
  std::vector<int> function_ids;
  std::vector<int> instance_ids;
  std::vector<std::size_t> dimensions;
  ObserverConfig observer;
  std::uint64_t budget_multiplier = 50;
  std::uint64_t independent_restarts = 1;
  bool stop_on_optimum = false;
};

/// Expands "1-25,75,80-100" (ASCII hyphen or en-dash) into a sorted, unique list.
/// Throws InputError on malformed input.
std::vector<std::int64_t> parse_id_ranges(std::string_view text);

/// Parses configuration.ini text with [suite], [observer] and [triggers].
/// Errors are ParseError naming `source`, the line and the key.
ExperimentConfig parse_config(std::string_view text, const std::string& source = "configuration.ini");
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace iohbench
