#include "iohbench/zip.hpp"

#include <fstream>

#include <zlib.h>

#include "iohbench/error.hpp"

namespace iohbench {

namespace fs = std::filesystem;

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;

[[noreturn]] void fail(const std::string& msg) { throw ParseError("zip archive", 0, msg); }

std::uint32_t le(std::string_view s, std::size_t at, int bytes) {
  if (at + static_cast<std::size_t>(bytes) > s.size()) fail("truncated archive");
  std::uint32_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[at + static_cast<std::size_t>(i)]);
  return v;
}

void put(std::string& out, std::uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

bool unsafe_name(const std::string& name) {
  if (name.empty() || name.front() == '/' || name.front() == '\\') return true;
  if (name.size() > 1 && name[1] == ':') return true;
  std::size_t start = 0;
  while (start <= name.size()) {
    auto end = name.find_first_of("/\\", start);
    if (end == std::string::npos) end = name.size();
    if (name.compare(start, end - start, "..") == 0 && end - start == 2) return true;
    start = end + 1;
  }
  return false;
}

std::string inflate_raw(std::string_view in, std::size_t expected) {
  std::string out(expected, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) fail("inflate init failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) fail("corrupt deflate stream");
  return out;
}

std::uint32_t crc_of(std::string_view data) {
  return static_cast<std::uint32_t>(
      crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size())));
}

}  // namespace

std::vector<ZipEntry> read_zip(std::string_view s, std::uint64_t max_total) {
  if (s.size() < 22) fail("not a zip archive");
  std::size_t eocd = std::string_view::npos;
  const std::size_t lowest = s.size() > 22 + 65535 ? s.size() - 22 - 65535 : 0;
  for (std::size_t p = s.size() - 22 + 1; p-- > lowest;) {
    if (le(s, p, 4) == kEndSig) {
      eocd = p;
      break;
    }
  }
  if (eocd == std::string_view::npos) fail("end of central directory not found");
  const std::uint32_t count = le(s, eocd + 10, 2);
  const std::uint32_t cd_offset = le(s, eocd + 16, 4);
  if (cd_offset == 0xffffffffu || count == 0xffffu) fail("zip64 archives are not supported");

  std::vector<ZipEntry> entries;
  std::uint64_t total = 0;
  std::size_t p = cd_offset;
  for (std::uint32_t k = 0; k < count; ++k) {
    if (le(s, p, 4) != kCentralSig) fail("bad central directory entry");
    const std::uint32_t flags = le(s, p + 8, 2);
    const std::uint32_t method = le(s, p + 10, 2);
    const std::uint32_t crc = le(s, p + 16, 4);
    const std::uint32_t csize = le(s, p + 20, 4);
    const std::uint32_t usize = le(s, p + 24, 4);
    const std::uint32_t name_len = le(s, p + 28, 2);
    const std::uint32_t extra_len = le(s, p + 30, 2);
    const std::uint32_t comment_len = le(s, p + 32, 2);
    const std::uint32_t local = le(s, p + 42, 4);
    if (p + 46 + name_len > s.size()) fail("truncated central directory");
    std::string name(s.substr(p + 46, name_len));
    p += 46 + name_len + extra_len + comment_len;

    if (flags & 1u) fail("encrypted member '" + name + "'");
    if (csize == 0xffffffffu || usize == 0xffffffffu || local == 0xffffffffu) fail("zip64 member '" + name + "'");
    if (unsafe_name(name)) fail("unsafe member path '" + name + "'");
    if (name.back() == '/' || name.back() == '\\') continue;

    if (le(s, local, 4) != kLocalSig) fail("bad local header for '" + name + "'");
    const std::size_t data_at = local + 30 + le(s, local + 26, 2) + le(s, local + 28, 2);
    if (data_at + csize > s.size()) fail("truncated member '" + name + "'");
    total += usize;
    if (total > max_total) fail("archive expands beyond the size limit");
    const auto raw = s.substr(data_at, csize);

    ZipEntry e{name, {}};
    if (method == 0) {
      if (csize != usize) fail("size mismatch in stored member '" + name + "'");
      e.data = std::string(raw);
    } else if (method == 8) {
      e.data = inflate_raw(raw, usize);
    } else {
      fail("unsupported compression method " + std::to_string(method) + " in '" + name + "'");
    }
    if (crc_of(e.data) != crc) fail("checksum mismatch in '" + name + "'");
    entries.push_back(std::move(e));
  }
  return entries;
}

void extract_zip(std::string_view archive, const fs::path& dest) {
  for (const auto& e : read_zip(archive)) {
    const fs::path target = dest / fs::path(e.name).lexically_normal();
    fs::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    if (!out) throw IoError(target, "cannot write");
    out.write(e.data.data(), static_cast<std::streamsize>(e.data.size()));
    if (!out) throw IoError(target, "write failed");
  }
}

std::string write_zip(const std::vector<ZipEntry>& entries) {
  std::string out;
  std::string central;
  for (const auto& e : entries) {
    const auto offset = static_cast<std::uint32_t>(out.size());
    const std::uint32_t crc = crc_of(e.data);
    const auto size = static_cast<std::uint32_t>(e.data.size());
    const auto name_len = static_cast<std::uint32_t>(e.name.size());
    put(out, kLocalSig, 4);
    put(out, 20, 2);  // version needed
    put(out, 0, 2);   // flags
    put(out, 0, 2);   // stored
    put(out, 0, 2);   // time
    put(out, 0x21, 2);  // date 1980-01-01
    put(out, crc, 4);
    put(out, size, 4);
    put(out, size, 4);
    put(out, name_len, 2);
    put(out, 0, 2);
    out += e.name;
    out += e.data;

    put(central, kCentralSig, 4);
    put(central, 20, 2);
    put(central, 20, 2);
    put(central, 0, 2);
    put(central, 0, 2);
    put(central, 0, 2);
    put(central, 0x21, 2);
    put(central, crc, 4);
    put(central, size, 4);
    put(central, size, 4);
    put(central, name_len, 2);
    put(central, 0, 2);
    put(central, 0, 2);
    put(central, 0, 2);
    put(central, 0, 2);
    put(central, 0, 4);
    put(central, offset, 4);
    central += e.name;
  }
  const auto cd_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  put(out, kEndSig, 4);
  put(out, 0, 2);
  put(out, 0, 2);
  put(out, static_cast<std::uint32_t>(entries.size()), 2);
  put(out, static_cast<std::uint32_t>(entries.size()), 2);
  put(out, static_cast<std::uint32_t>(central.size()), 4);
  put(out, cd_offset, 4);
  put(out, 0, 2);
  return out;
}

}  // namespace iohbench
