#include "iohbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "iohbench/error.hpp"
#include "iohbench/numfmt.hpp"

namespace iohbench {

namespace fs = std::filesystem;

std::size_t RunDataset::run_count() const {
  std::size_t n = 0;
  for (const auto& [_, g] : groups) n += g.runs.size();
  return n;
}

std::vector<std::string> LoadReport::lines() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    out.push_back(std::to_string(e.runs) + " runs for the " + std::to_string(e.key.dimension) +
                  "-dimensional version of function f" + std::to_string(e.key.function_id) + " (" +
                  e.key.algorithm + ")");
  }
  return out;
}

namespace {

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto end = s.find(sep, start);
    out.push_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

struct InfoRun {
  int instance_id;
  std::uint64_t count;
  double best;
};

struct InfoEntry {
  std::string algorithm;
  int function_id = 0;
  std::size_t dimension = 0;
  std::string data_path;
  std::vector<InfoRun> runs;
  std::size_t line = 0;
};

// `suite = 'PBO', funcId = 2, DIM = 100, algId = 'X', version = '0.1.0'`
std::map<std::string, std::string> parse_header_fields(std::string_view line, const std::string& src,
                                                       std::size_t lineno) {
  std::map<std::string, std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == ',')) ++i;
    if (i >= line.size()) break;
    const auto eq = line.find('=', i);
    if (eq == std::string_view::npos) throw ParseError(src, lineno, "expected key = value");
    std::string key(trim(line.substr(i, eq - i)));
    i = eq + 1;
    while (i < line.size() && line[i] == ' ') ++i;
    std::string value;
    if (i < line.size() && (line[i] == '\'' || line[i] == '"')) {
      const char q = line[i];
      const auto close = line.find(q, i + 1);
      if (close == std::string_view::npos) throw ParseError(src, lineno, "unterminated quote");
      value = std::string(line.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      const auto comma = line.find(',', i);
      value = std::string(trim(line.substr(i, comma == std::string_view::npos ? line.size() - i : comma - i)));
      i = comma == std::string_view::npos ? line.size() : comma;
    }
    fields[key] = value;
  }
  return fields;
}

std::vector<InfoEntry> parse_info(const fs::path& path) {
  const auto lines = read_lines(path);
  const std::string src = path.string();
  std::vector<InfoEntry> entries;
  std::size_t i = 0;
  auto next_nonempty = [&]() {
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
  };
  while (true) {
    next_nonempty();
    if (i >= lines.size()) break;
    InfoEntry e;
    e.line = i + 1;
    auto fields = parse_header_fields(lines[i], src, i + 1);
    const auto fid = fields.contains("funcId") ? parse_int(fields["funcId"]).value_or(0) : 0;
    const auto dim = fields.contains("DIM") ? parse_int(fields["DIM"]).value_or(0) : 0;
    if (fid < 1) throw ParseError(src, i + 1, "missing or invalid funcId");
    if (dim < 1) throw ParseError(src, i + 1, "missing or invalid DIM");
    if (!fields.contains("algId")) throw ParseError(src, i + 1, "missing algId");
    e.function_id = static_cast<int>(fid);
    e.dimension = static_cast<std::size_t>(dim);
    e.algorithm = fields["algId"];
    ++i;
    next_nonempty();
    if (i < lines.size() && trim(lines[i]).starts_with("%")) ++i;
    next_nonempty();
    if (i >= lines.size()) throw ParseError(src, i, "missing data line after header");
    const auto parts = split(lines[i], ',');
    e.data_path = std::string(trim(parts[0]));
    std::replace(e.data_path.begin(), e.data_path.end(), '\\', '/');
    if (e.data_path.empty()) throw ParseError(src, i + 1, "missing data file path");
    for (std::size_t k = 1; k < parts.size(); ++k) {
      const auto item = trim(parts[k]);
      if (item.empty()) continue;
      const auto colon = item.find(':');
      const auto bar = item.find('|');
      if (colon == std::string_view::npos || bar == std::string_view::npos || bar < colon) {
        throw ParseError(src, i + 1, "malformed run entry '" + std::string(item) + "'");
      }
      auto inst = parse_int(item.substr(0, colon));
      auto count = parse_int(item.substr(colon + 1, bar - colon - 1));
      auto best = parse_double(item.substr(bar + 1));
      if (!inst || !count || *count < 0 || !best) {
        throw ParseError(src, i + 1, "malformed run entry '" + std::string(item) + "'");
      }
      e.runs.push_back({static_cast<int>(*inst), static_cast<std::uint64_t>(*count), *best});
    }
    ++i;
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<std::string> parse_quoted(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while ((i = line.find('"', i)) != std::string_view::npos) {
    const auto close = line.find('"', i + 1);
    if (close == std::string_view::npos) break;
    out.emplace_back(line.substr(i + 1, close - i - 1));
    i = close + 1;
  }
  return out;
}

struct ParsedRun {
  std::vector<std::string> parameter_names;
  std::vector<LogRecord> records;
};

std::vector<ParsedRun> parse_data_file(const fs::path& path) {
  const auto lines = read_lines(path);
  const std::string src = path.string();
  std::vector<ParsedRun> runs;
  std::vector<double> fields;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto line = trim(lines[ln]);
    if (line.empty()) continue;
    if (line.front() == '"') {
      auto names = parse_quoted(line);
      if (names.size() < 5) throw ParseError(src, ln + 1, "header needs at least 5 columns");
      runs.push_back({std::vector<std::string>(names.begin() + 5, names.end()), {}});
      continue;
    }
    if (runs.empty()) throw ParseError(src, ln + 1, "data row before any header");
    auto& run = runs.back();
    fields.clear();
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos >= line.size()) break;
      auto end = line.find_first_of(" \t", pos);
      if (end == std::string_view::npos) end = line.size();
      auto v = parse_double(line.substr(pos, end - pos));
      if (!v) {
        throw ParseError(src, ln + 1, "not a number: '" + std::string(line.substr(pos, end - pos)) + "'");
      }
      fields.push_back(*v);
      pos = end;
    }
    const std::size_t expected = 5 + run.parameter_names.size();
    if (fields.size() != expected) {
      throw ParseError(src, ln + 1, "expected " + std::to_string(expected) + " columns, got " +
                                        std::to_string(fields.size()));
    }
    if (fields[0] < 1 || fields[0] != std::floor(fields[0])) {
      throw ParseError(src, ln + 1, "evaluation count must be a positive integer");
    }
    LogRecord rec;
    rec.evaluations = static_cast<std::uint64_t>(fields[0]);
    rec.raw_value = fields[1];
    rec.best_raw = fields[2];
    rec.transformed_value = fields[3];
    rec.best_transformed = fields[4];
    rec.parameters.assign(fields.begin() + 5, fields.end());
    if (!run.records.empty() && rec.evaluations <= run.records.back().evaluations) {
      throw ParseError(src, ln + 1, "evaluation counts not strictly increasing");
    }
    run.records.push_back(std::move(rec));
  }
  return runs;
}

std::vector<fs::path> find_info_files(const fs::path& folder) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(folder, ec)) throw IoError(folder, "not a directory");
  for (auto it = fs::recursive_directory_iterator(folder, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (it->is_regular_file() && it->path().extension() == ".info") out.push_back(it->path());
  }
  if (ec) throw IoError(folder, ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

void merge_group(RunDataset& ds, const DatasetKey& key, std::vector<std::string> names,
                 std::vector<Run> runs) {
  auto [it, inserted] = ds.groups.try_emplace(key);
  auto& g = it->second;
  if (inserted) {
    g.parameter_names = std::move(names);
  } else if (g.parameter_names != names) {
    throw IntegrityError("parameter columns differ between sources for " + key.algorithm + " f" +
                         std::to_string(key.function_id) + " DIM " + std::to_string(key.dimension));
  }
  for (auto& r : runs) g.runs.push_back(std::move(r));
}

void load_into(RunDataset& ds, const fs::path& folder, LoadReport& report) {
  const auto infos = find_info_files(folder);
  if (infos.empty()) throw IoError(folder, "no .info files");
  for (const auto& info : infos) {
    for (const auto& entry : parse_info(info)) {
      const fs::path base = info.parent_path() / entry.data_path;
      fs::path data;
      DataFile kind = DataFile::dat;
      for (auto k : {DataFile::dat, DataFile::cdat, DataFile::idat, DataFile::tdat}) {
        fs::path candidate = base;
        candidate.replace_extension(extension(k));
        if (fs::exists(candidate)) {
          data = candidate;
          kind = k;
          break;
        }
      }
      if (data.empty()) throw IoError(base, "data file not found (tried .dat/.cdat/.idat/.tdat)");

      auto parsed = parse_data_file(data);
      const std::string where = data.string();
      if (parsed.size() != entry.runs.size()) {
        report.warnings.push_back(where + ": " + std::to_string(parsed.size()) + " runs but " +
                                  info.string() + " lists " + std::to_string(entry.runs.size()));
      }
      std::vector<Run> runs;
      std::vector<std::string> names;
      for (std::size_t r = 0; r < parsed.size(); ++r) {
        auto& p = parsed[r];
        if (p.records.empty()) {
          report.warnings.push_back(where + ": run " + std::to_string(r + 1) + " has no records, skipped");
          continue;
        }
        if (runs.empty()) {
          names = p.parameter_names;
        } else if (p.parameter_names != names) {
          throw ParseError(where, 0, "parameter columns change between runs");
        }
        Run run;
        run.records = std::move(p.records);
        if (r < entry.runs.size()) {
          const auto& ir = entry.runs[r];
          run.instance_id = ir.instance_id;
          run.summary = RunSummary{ir.instance_id, ir.count, ir.best};
          if (kind == DataFile::dat && ir.count != run.records.size()) {
            report.warnings.push_back(where + ": run " + std::to_string(r + 1) + " has " +
                                      std::to_string(run.records.size()) + " rows, .info says " +
                                      std::to_string(ir.count));
          }
          if (ir.best != run.final_best()) {
            report.warnings.push_back(where + ": run " + std::to_string(r + 1) + " final best " +
                                      format_double(run.final_best()) + ", .info says " +
                                      format_double(ir.best));
          }
        } else {
          run.summary = RunSummary{0, run.records.size(), run.final_best()};
        }
        runs.push_back(std::move(run));
      }
      if (runs.empty()) continue;
      DatasetKey key{entry.algorithm, entry.function_id, entry.dimension};
      report.entries.push_back({key, runs.size(), data, kind});
      merge_group(ds, key, std::move(names), std::move(runs));
    }
  }
}

enum class Trend { constant, up, down, mixed };

Trend trend(const Run& run) {
  bool up = false, down = false;
  for (std::size_t i = 1; i < run.records.size(); ++i) {
    const double prev = run.records[i - 1].best_raw;
    const double cur = run.records[i].best_raw;
    if (cur > prev) up = true;
    if (cur < prev) down = true;
  }
  if (up && down) return Trend::mixed;
  if (up) return Trend::up;
  if (down) return Trend::down;
  return Trend::constant;
}

}  // namespace

RunDataset load_folders(std::span<const fs::path> folders, LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  RunDataset ds;
  for (const auto& f : folders) load_into(ds, f, rep);
  if (ds.empty()) throw IntegrityError("no runs found");
  ds.direction = detect_direction(ds);
  return ds;
}

RunDataset load_folder(const fs::path& folder, LoadReport* report) {
  return load_folders(std::span<const fs::path>(&folder, 1), report);
}

Direction detect_direction(const RunDataset& dataset) {
  if (dataset.empty()) throw InputError("detect_direction: empty dataset");
  bool up = false, down = false;
  for (const auto& [key, group] : dataset.groups) {
    for (const auto& run : group.runs) {
      switch (trend(run)) {
        case Trend::up: up = true; break;
        case Trend::down: down = true; break;
        case Trend::mixed:
          throw IntegrityError("best-so-far values of a run of " + key.algorithm + " f" +
                               std::to_string(key.function_id) + " are not monotone");
        case Trend::constant: break;
      }
    }
  }
  if (up && down) throw IntegrityError("runs disagree on the optimization direction");
  return down ? Direction::minimize : Direction::maximize;
}

RunDataset trim_efficient(const RunDataset& dataset, std::size_t cap) {
  if (cap < 2) throw InputError("trim_efficient: cap must be >= 2");
  RunDataset out;
  out.direction = dataset.direction;
  for (const auto& [key, group] : dataset.groups) {
    RunGroup g;
    g.parameter_names = group.parameter_names;
    for (const auto& run : group.runs) {
      Run trimmed;
      trimmed.instance_id = run.instance_id;
      trimmed.summary = run.summary;
      const auto& recs = run.records;
      if (recs.size() <= cap) {
        trimmed.records = recs;
        g.runs.push_back(std::move(trimmed));
        continue;
      }
      std::vector<std::size_t> improvements;
      for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
        if (improves(recs[i].best_raw, recs[i - 1].best_raw, dataset.direction)) improvements.push_back(i);
      }
      const std::size_t count = improvements.size() + 2;
      std::size_t stride = 1;
      if (count > cap) stride = (count + cap - 1) / cap;
      trimmed.records.push_back(recs.front());
      for (std::size_t j = 0; j < improvements.size(); ++j) {
        if ((j + 1) % stride == 0) trimmed.records.push_back(recs[improvements[j]]);
      }
      trimmed.records.push_back(recs.back());
      g.runs.push_back(std::move(trimmed));
    }
    out.groups.emplace(key, std::move(g));
  }
  return out;
}

}  // namespace iohbench
