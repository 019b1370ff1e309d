#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace iohbench {

struct ZipEntry {
  std::string name;
  std::string data;
};

/// Reads a zip archive held in memory. Supports stored and deflated members;
/// directory entries are skipped. Throws ParseError on malformed, encrypted,
/// zip64 or unsafe (absolute, "..") members, and when the inflated total
/// exceeds `max_total` bytes.
std::vector<ZipEntry> read_zip(std::string_view archive, std::uint64_t max_total = std::uint64_t{1} << 32);

/// Writes every member below `dest`, creating directories as needed.
void extract_zip(std::string_view archive, const std::filesystem::path& dest);

/// Builds an uncompressed archive.
std::string write_zip(const std::vector<ZipEntry>& entries);

}  // namespace iohbench
