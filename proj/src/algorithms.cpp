#include "iohbench/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "iohbench/error.hpp"

namespace iohbench {

namespace {

constexpr std::size_t kMaxResamples = 1'000'000;

BitString uniform_bits(std::size_t n, SeededGenerator& rng) {
  BitString x(n);
  for (auto& b : x) b = static_cast<std::uint8_t>(rng.uniform() * 2.0);
  return x;
}

}  // namespace

double random_search(AlgorithmContext& ctx) {
  const std::size_t n = ctx.dimension();
  double best = -std::numeric_limits<double>::infinity();
  BitString x(n);
  for (std::uint64_t i = 0; !ctx.done(); ++i) {
    for (auto& b : x) b = static_cast<std::uint8_t>(ctx.random().uniform() * 2.0);
    ctx.set_parameters({static_cast<double>(i + 1)});
    best = std::max(best, ctx.evaluate(x));
  }
  return best;
}

std::size_t flip_mutation(BitString& x, double rate, SeededGenerator& rng) {
  const std::size_t n = x.size();
  if (n == 0) throw InputError("flip_mutation: empty bit string");
  if (!(rate > 0.0)) throw InputError("flip_mutation: mutation rate must be positive");
  std::size_t l = 0;
  for (std::size_t tries = 0; l == 0; ++tries) {
    if (tries == kMaxResamples) throw Error("flip_mutation: could not draw l > 0");
    l = rng.binomial(n, rate);
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < l; ++i) {
    std::swap(idx[i], idx[i + rng.below(n - i)]);
    x[idx[i]] ^= 1;
  }
  return l;
}

double update_mutation_rate(double rate, double gaussian, std::size_t n) {
  const double next = 1.0 / (1.0 + (1.0 - rate) / rate * std::exp(0.22 * gaussian));
  return std::min(std::max(next, 1.0 / static_cast<double>(n)), 0.5);
}

double one_plus_lambda_ea(AlgorithmContext& ctx, std::size_t lambda) {
  if (lambda < 1) throw InputError("one_plus_lambda_ea: lambda must be >= 1");
  const std::size_t n = ctx.dimension();
  auto& rng = ctx.random();

  BitString parent = uniform_bits(n, rng);
  double rate = 1.0 / static_cast<double>(n);
  ctx.set_parameters({rate, 0.0});
  if (ctx.done()) return -std::numeric_limits<double>::infinity();
  double best_value = ctx.evaluate(parent);
  BitString best = parent;

  while (!ctx.done()) {
    for (std::size_t i = 0; i < lambda && !ctx.done(); ++i) {
      BitString offspring = parent;
      const std::size_t l = flip_mutation(offspring, rate, rng);
      ctx.set_parameters({rate, static_cast<double>(l)});
      const double v = ctx.evaluate(offspring);
      if (v > best_value) {
        best_value = v;
        best = std::move(offspring);
      }
    }
    parent = best;
    rate = update_mutation_rate(rate, rng.normal(), n);
  }
  return best_value;
}

Algorithm make_algorithm(const std::string& name, const AlgorithmOptions& options) {
  if (name == "random-search") return random_search;
  if (name == "one-plus-lambda-ea") {
    if (options.lambda < 1) throw InputError("lambda must be >= 1");
    return [lambda = options.lambda](AlgorithmContext& ctx) {
      return one_plus_lambda_ea(ctx, lambda);
    };
  }
  throw LookupError("unknown algorithm '" + name + "'");
}

std::vector<std::string> algorithm_names() { return {"random-search", "one-plus-lambda-ea"}; }

}  // namespace iohbench
