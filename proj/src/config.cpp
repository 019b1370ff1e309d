#include "iohbench/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "iohbench/error.hpp"
#include "iohbench/numfmt.hpp"
#include "iohbench/suite.hpp"

namespace iohbench {

namespace {

constexpr std::string_view kEnDash = "\xE2\x80\x93";

struct Value {
  std::string text;
  std::size_t line;
};

using Section = std::map<std::string, Value>;

std::string unquote(std::string_view v) {
  v = trim(v);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"suite",
       {"suite_name", "functions_id", "instances_id", "dimensions", "budget_multiplier",
        "independent_restarts", "stop_on_optimum"}},
      {"observer",
       {"observer_name", "result_folder", "algorithm_name", "algorithm_info", "parameters_name"}},
      {"triggers",
       {"complete_triggers", "number_interval_triggers", "number_target_triggers",
        "base_evaluation_triggers"}},
  };
  return keys;
}

class Reader {
 public:
  Reader(std::map<std::string, Section> sections, std::map<std::string, std::size_t> section_lines,
         std::string source)
      : sections_(std::move(sections)), lines_(std::move(section_lines)), source_(std::move(source)) {}

  const Value* find(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  const Value& require(const std::string& section, const std::string& key) const {
    if (!sections_.contains(section)) {
      throw ParseError(source_, 0, "missing section [" + section + "]");
    }
    const Value* v = find(section, key);
    if (!v) {
      throw ParseError(source_, lines_.at(section),
                       "missing key '" + key + "' in section [" + section + "]");
    }
    return *v;
  }

  [[noreturn]] void fail(const Value& v, const std::string& key, const std::string& what) const {
    throw ParseError(source_, v.line, "key '" + key + "': " + what);
  }

  std::vector<std::int64_t> ranges(const std::string& section, const std::string& key) const {
    const Value& v = require(section, key);
    try {
      auto ids = parse_id_ranges(v.text);
      if (ids.empty()) fail(v, key, "empty selection");
      return ids;
    } catch (const InputError& e) {
      fail(v, key, e.what());
    }
  }

  std::uint64_t unsigned_value(const Value& v, const std::string& key, bool positive) const {
    auto n = parse_int(v.text);
    if (!n || *n < 0 || (positive && *n == 0)) {
      fail(v, key, std::string("expected a ") + (positive ? "positive" : "non-negative") +
                       " integer, got '" + v.text + "'");
    }
    return static_cast<std::uint64_t>(*n);
  }

  bool boolean(const Value& v, const std::string& key) const {
    const std::string t = lower(v.text);
    if (t == "true") return true;
    if (t == "false") return false;
    fail(v, key, "expected true or false, got '" + v.text + "'");
  }

 private:
  std::map<std::string, Section> sections_;
  std::map<std::string, std::size_t> lines_;
  std::string source_;
};

std::vector<std::string> split_names(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = unquote(text.substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    start = end + 1;
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> parse_id_ranges(std::string_view text) {
  std::string normalized(trim(text));
  for (auto pos = normalized.find(kEnDash); pos != std::string::npos;
       pos = normalized.find(kEnDash, pos)) {
    normalized.replace(pos, kEnDash.size(), "-");
  }
  std::set<std::int64_t> ids;
  std::string_view rest = normalized;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty()) throw InputError("empty item in '" + normalized + "'");
    const auto dash = item.find('-', 1);
    if (dash == std::string_view::npos) {
      auto v = parse_int(item);
      if (!v) throw InputError("not an integer: '" + std::string(item) + "'");
      ids.insert(*v);
    } else {
      auto lo = parse_int(item.substr(0, dash));
      auto hi = parse_int(item.substr(dash + 1));
      if (!lo || !hi) throw InputError("malformed range '" + std::string(item) + "'");
      if (*lo > *hi) throw InputError("descending range '" + std::string(item) + "'");
      if (*hi - *lo > 10'000'000) throw InputError("range too large '" + std::string(item) + "'");
      for (auto i = *lo; i <= *hi; ++i) ids.insert(i);
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return {ids.begin(), ids.end()};
}

ExperimentConfig parse_config(std::string_view text, const std::string& source) {
  std::map<std::string, Section> sections;
  std::map<std::string, std::size_t> section_lines;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line = trim(line.substr(3));
    if (line.empty() || line.front() == ';' || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, lineno, "malformed section header");
      current = lower(std::string(trim(line.substr(1, line.size() - 2))));
      if (!known_keys().contains(current)) {
        throw ParseError(source, lineno, "unknown section [" + current + "]");
      }
      if (sections.contains(current)) {
        throw ParseError(source, lineno, "duplicate section [" + current + "]");
      }
      sections[current];
      section_lines[current] = lineno;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, lineno, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (current.empty()) throw ParseError(source, lineno, "key '" + key + "' outside any section");
    if (!known_keys().at(current).contains(key)) {
      throw ParseError(source, lineno, "unknown key '" + key + "' in section [" + current + "]");
    }
    auto& sec = sections[current];
    if (sec.contains(key)) throw ParseError(source, lineno, "duplicate key '" + key + "'");
    sec[key] = Value{unquote(line.substr(eq + 1)), lineno};
  }

  Reader r(std::move(sections), std::move(section_lines), source);
  ExperimentConfig cfg;

  cfg.suite_name = r.require("suite", "suite_name").text;
  for (auto id : r.ranges("suite", "functions_id")) {
    if (id < 1) r.fail(r.require("suite", "functions_id"), "functions_id", "ids must be positive");
    cfg.function_ids.push_back(static_cast<int>(id));
  }
  for (auto id : r.ranges("suite", "instances_id")) {
    if (id < 1 || id > kMaxInstanceId) {
      r.fail(r.require("suite", "instances_id"), "instances_id",
             "instance ids must lie in [1, " + std::to_string(kMaxInstanceId) + "]");
    }
    cfg.instance_ids.push_back(static_cast<int>(id));
  }
  for (auto d : r.ranges("suite", "dimensions")) {
    if (d < 1) r.fail(r.require("suite", "dimensions"), "dimensions", "dimensions must be positive");
    cfg.dimensions.push_back(static_cast<std::size_t>(d));
  }
  if (const auto* v = r.find("suite", "budget_multiplier")) {
    cfg.budget_multiplier = r.unsigned_value(*v, "budget_multiplier", true);
  }
  if (const auto* v = r.find("suite", "independent_restarts")) {
    cfg.independent_restarts = r.unsigned_value(*v, "independent_restarts", true);
  }
  if (const auto* v = r.find("suite", "stop_on_optimum")) {
    cfg.stop_on_optimum = r.boolean(*v, "stop_on_optimum");
  }

  auto& obs = cfg.observer;
  obs.observer_name = r.require("observer", "observer_name").text;
  const auto& folder = r.require("observer", "result_folder");
  if (folder.text.empty()) r.fail(folder, "result_folder", "must not be empty");
  obs.result_folder = folder.text;
  const auto& alg = r.require("observer", "algorithm_name");
  if (alg.text.empty()) r.fail(alg, "algorithm_name", "must not be empty");
  obs.algorithm_name = alg.text;
  obs.algorithm_info = r.require("observer", "algorithm_info").text;
  obs.parameter_names = split_names(r.require("observer", "parameters_name").text);

  obs.complete_triggers =
      r.boolean(r.require("triggers", "complete_triggers"), "complete_triggers");
  obs.interval_step = r.unsigned_value(r.require("triggers", "number_interval_triggers"),
                                       "number_interval_triggers", false);
  obs.target_triggers = r.unsigned_value(r.require("triggers", "number_target_triggers"),
                                         "number_target_triggers", false);
  const auto& base = r.require("triggers", "base_evaluation_triggers");
  if (!base.text.empty() && base.text != "0") {
    std::vector<std::int64_t> values;
    try {
      for (auto item : split_names(base.text)) {
        auto v = parse_int(item);
        if (!v || *v < 1) throw InputError("'" + item + "' is not a positive integer");
        values.push_back(*v);
      }
    } catch (const InputError& e) {
      r.fail(base, "base_evaluation_triggers", e.what());
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (auto v : values) obs.base_evaluations.push_back(static_cast<std::uint64_t>(v));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot read configuration");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace iohbench
