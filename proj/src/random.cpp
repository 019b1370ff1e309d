#include "iohbench/random.hpp"

#include <cmath>
#include <numbers>

namespace iohbench {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t s = 0;
  for (auto k : keys) s = mix64(s ^ k);
  return s;
}

double SeededGenerator::uniform() {
  constexpr double scale = 1.0 / 281474976710656.0;  // 2^-48
  return static_cast<double>(engine_()) * scale;
}

std::size_t SeededGenerator::below(std::size_t n) {
  auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return k < n ? k : n - 1;
}

double SeededGenerator::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t SeededGenerator::binomial(std::size_t n, double p) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const double q = 1.0 - p;
  double pk = std::pow(q, static_cast<double>(n));
  if (pk == 0.0) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k += uniform() < p ? 1 : 0;
    return k;
  }
  const double u = uniform();
  const double ratio = p / q;
  double cdf = pk;
  std::size_t k = 0;
  while (u >= cdf && k < n) {
    pk *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
    ++k;
    cdf += pk;
  }
  return k;
}

}  // namespace iohbench
