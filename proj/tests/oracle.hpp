#pragma once

// Brute-force reference computations for the statistics tests. Nothing here
// calls into the library's statistics code: trajectories are re-read from the
// .cdat files (every evaluation) and T, V, ECDF and AUC are recomputed by
// plain loops over all evaluations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

struct Trajectory {
  std::vector<std::uint64_t> evals;
  std::vector<double> current;
  std::vector<std::vector<double>> params;

  double best_upto(std::size_t k) const {
    double b = current[0];
    for (std::size_t i = 1; i <= k; ++i) b = std::max(b, current[i]);
    return b;
  }
};

// (algorithm, function, dimension)
using Key = std::tuple<std::string, int, std::size_t>;

inline std::vector<Trajectory> read_cdat(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<Trajectory> runs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '"') {
      runs.emplace_back();
      continue;
    }
    std::istringstream ss(line);
    double e = 0, cur = 0, best = 0, ct = 0, bt = 0;
    ss >> e >> cur >> best >> ct >> bt;
    std::vector<double> p;
    double v = 0;
    while (ss >> v) p.push_back(v);
    runs.back().evals.push_back(static_cast<std::uint64_t>(e));
    runs.back().current.push_back(cur);
    runs.back().params.push_back(p);
  }
  return runs;
}

// Reads algId / funcId / DIM / data path from every .info in the folder and
// collects the matching .cdat trajectories.
inline std::map<Key, std::vector<Trajectory>> read_folder(const std::filesystem::path& folder) {
  std::map<Key, std::vector<Trajectory>> out;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(folder)) {
    if (entry.path().extension() != ".info") continue;
    std::ifstream in(entry.path());
    std::string header, comment, data;
    while (std::getline(in, header) && std::getline(in, comment) && std::getline(in, data)) {
      auto field = [&](const std::string& name) {
        const auto at = header.find(name + " = ");
        const auto start = at + name.size() + 3;
        const auto end = header.find(',', start);
        std::string v = header.substr(start, end == std::string::npos ? std::string::npos : end - start);
        v.erase(std::remove(v.begin(), v.end(), '\''), v.end());
        return v;
      };
      const Key key{field("algId"), std::stoi(field("funcId")), std::stoul(field("DIM"))};
      std::string rel = data.substr(0, data.find(','));
      rel = rel.substr(0, rel.size() - 4) + ".cdat";
      auto runs = read_cdat(entry.path().parent_path() / rel);
      auto& dst = out[key];
      dst.insert(dst.end(), runs.begin(), runs.end());
    }
  }
  return out;
}

// 0 when unreached.
inline std::uint64_t hitting_time(const Trajectory& t, double v) {
  double best = -INFINITY;
  for (std::size_t i = 0; i < t.evals.size(); ++i) {
    best = std::max(best, t.current[i]);
    if (best >= v) return t.evals[i];
  }
  return 0;
}

inline std::size_t hitting_index(const Trajectory& t, double v) {
  double best = -INFINITY;
  for (std::size_t i = 0; i < t.evals.size(); ++i) {
    best = std::max(best, t.current[i]);
    if (best >= v) return i;
  }
  return t.evals.size();
}

inline double value_at(const Trajectory& t, std::uint64_t budget) {
  double best = t.current[0];
  for (std::size_t i = 0; i < t.evals.size() && t.evals[i] <= budget; ++i) best = std::max(best, t.current[i]);
  return best;
}

inline double pct(std::vector<double> s, double p) {
  std::sort(s.begin(), s.end());
  long idx = static_cast<long>(std::floor(p * static_cast<double>(s.size()) / 100.0));
  if (idx < 1) idx = 1;
  if (idx > static_cast<long>(s.size())) idx = static_cast<long>(s.size());
  return s[static_cast<std::size_t>(idx - 1)];
}

inline double mean(const std::vector<double>& s) {
  double sum = 0;
  for (double x : s) sum += x;
  return sum / static_cast<double>(s.size());
}

inline double sd(const std::vector<double>& s) {
  const double m = mean(s);
  double ss = 0;
  for (double x : s) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(s.size() - 1));
}

inline double ecdf_target(const std::vector<Trajectory>& runs, const std::vector<double>& targets, double t) {
  double hits = 0;
  for (const auto& r : runs) {
    for (double v : targets) {
      const auto h = hitting_time(r, v);
      if (h != 0 && static_cast<double>(h) <= t) hits += 1;
    }
  }
  return hits / static_cast<double>(runs.size() * targets.size());
}

inline double ecdf_budget(const std::vector<Trajectory>& runs, const std::vector<std::uint64_t>& budgets, double v) {
  double hits = 0;
  for (const auto& r : runs) {
    for (auto b : budgets) {
      if (value_at(r, b) >= v) hits += 1;
    }
  }
  return hits / static_cast<double>(runs.size() * budgets.size());
}

// Sum of the ECDF over every integer budget 1..B, divided by B.
inline double auc(const std::vector<Trajectory>& runs, const std::vector<double>& targets, std::uint64_t B) {
  double area = 0;
  for (std::uint64_t t = 1; t <= B; ++t) area += ecdf_target(runs, targets, static_cast<double>(t));
  return area / static_cast<double>(B);
}

inline bool close(double a, double b, double rel = 1e-9) {
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace oracle
