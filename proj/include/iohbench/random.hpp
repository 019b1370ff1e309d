#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace iohbench {

/// splitmix64 finalizer; used to derive independent seeds from integer keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Folds a tuple of integer keys into one seed: s = mix64(s ^ k) for each key,
/// starting from s = 0.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) noexcept;

/// Reproducible uniform stream backed by the lagged-Fibonacci
/// subtract-with-carry engine std::ranlux48_base (lags 5/12, 48-bit words),
/// whose recurrence and integer seeding are fixed by the C++ standard.
/// uniform() = word / 2^48, so the same seed gives the same doubles everywhere.
class SeededGenerator {
 public:
  explicit SeededGenerator(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n); n >= 1.
  std::size_t below(std::size_t n);
  /// Standard normal via Box-Muller on two uniforms.
  double normal();
  /// Binomial(n, p) by CDF inversion on one uniform. Falls back to n Bernoulli
  /// trials when (1-p)^n underflows.
  std::size_t binomial(std::size_t n, double p);

 private:
  std::uint64_t seed_;
  std::ranlux48_base engine_;
};

}  // namespace iohbench
