#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iohbench/error.hpp"

namespace iohbench {

/// Search point over {0,1}^n; entries are 0 or 1.
using BitString = std::vector<std::uint8_t>;
using BitView = std::span<const std::uint8_t>;
using Permutation = std::vector<std::size_t>;

// ---- base functions -------------------------------------------------------

double onemax(BitView x);
double leading_ones(BitView x);
/// k + |x| when |x| = n or |x| <= n - k, n - |x| inside the gap. 1 <= k <= n.
double jump(BitView x, std::size_t k);
double linear(BitView x, std::span<const double> weights);

// ---- search-space and objective transformations ---------------------------

BitString xor_shift(BitView x, BitView z);

bool is_permutation(std::span<const std::size_t> sigma);

/// y[i] = x[sigma[i]].
template <typename T>
std::vector<T> permute(std::span<const T> x, std::span<const std::size_t> sigma) {
  if (x.size() != sigma.size()) {
    throw InputError("permute: length mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(sigma.size()) + ")");
  }
  if (!is_permutation(sigma)) throw InputError("permute: not a permutation");
  std::vector<T> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[sigma[i]];
  return y;
}

Permutation inverse(std::span<const std::size_t> sigma);

inline double scale_and_shift(double v, double a, double b) { return a * v + b; }

// ---- problems -------------------------------------------------------------

using Evaluator = std::function<double(BitView)>;

/// A static, noise-free objective over {0,1}^n (maximized).
struct Problem {
  int function_id = 0;
  std::string name;
  std::size_t dimension = 0;
  Evaluator evaluate_raw;
  std::optional<double> optimum_value;

  double operator()(BitView x) const;
};

/// Builds the dimension-specific problem for one function id.
using ProblemFactory = std::function<Problem(std::size_t dimension)>;

class ProblemRegistry {
 public:
  /// Registry holding the four built-in problems (ids 1-4).
  static ProblemRegistry with_builtins();

  void register_problem(int function_id, std::string name, Evaluator evaluator,
                        std::optional<double> optimum_value = std::nullopt);
  void register_factory(int function_id, std::string name, ProblemFactory factory);

  bool contains(int function_id) const { return factories_.contains(function_id); }
  const std::string& name(int function_id) const;
  Problem make(int function_id, std::size_t dimension) const;
  std::vector<int> ids() const;

 private:
  struct Entry {
    std::string name;
    ProblemFactory factory;
  };
  std::map<int, Entry> factories_;
};

Problem make_onemax(std::size_t n);
Problem make_leading_ones(std::size_t n);
Problem make_jump(std::size_t n, std::size_t k = 1);
/// Linear function with weights drawn uniformly in [0, 5], keyed by (4, n).
Problem make_linear(std::size_t n);
std::vector<double> linear_weights(std::size_t n);

// ---- instances ------------------------------------------------------------

inline constexpr int kMaxInstanceId = 100;
inline constexpr int kLastXorInstance = 50;

/// Transformation tuple: y = a * f(sigma(x xor z)) + b.
struct InstanceSpec {
  int instance_id = 1;
  BitString xor_mask;
  Permutation permutation;
  double scale = 1.0;
  double shift = 0.0;

  bool operator==(const InstanceSpec&) const = default;

  static InstanceSpec identity(std::size_t n);
};

/// Deterministic instance parameters for (function_id, instance_id, dimension).
/// 1 is the identity, 2..50 use an XOR mask, 51..100 a permutation; both
/// bands add a scale in [0.2, 5] and a shift in [-1000, 1000].
InstanceSpec make_instance_spec(int function_id, int instance_id, std::size_t dimension);

struct Evaluation {
  double raw;
  double transformed;
};

class InstancedProblem {
 public:
  InstancedProblem(Problem problem, InstanceSpec spec);

  const Problem& problem() const noexcept { return problem_; }
  const InstanceSpec& spec() const noexcept { return spec_; }
  std::size_t dimension() const noexcept { return problem_.dimension; }

  /// raw = f(sigma(x xor z)); transformed = a * raw + b.
  Evaluation evaluate(BitView x) const;

 private:
  Problem problem_;
  InstanceSpec spec_;
};

InstancedProblem make_instance(const ProblemRegistry& registry, int function_id, int instance_id,
                               std::size_t dimension);

}  // namespace iohbench
