#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "iohbench/runner.hpp"

namespace iohbench {

/// Uniform sampling until the budget is spent. Logs one parameter: the
/// 1-based evaluation index.
double random_search(AlgorithmContext& ctx);

/// (1+lambda) EA with self-adjusting mutation rate. Logs two parameters:
/// the mutation rate and the number of flipped bits l.
double one_plus_lambda_ea(AlgorithmContext& ctx, std::size_t lambda);

/// Samples l ~ Bin(n, rate) until l > 0 and flips l distinct positions of x.
/// Returns l.
std::size_t flip_mutation(BitString& x, double rate, SeededGenerator& rng);

/// 1 / (1 + (1-rate)/rate * exp(0.22 g)), clamped to [1/n, 0.5].
double update_mutation_rate(double rate, double gaussian, std::size_t n);

struct AlgorithmOptions {
  std::size_t lambda = 1;
};

/// "random-search" or "one-plus-lambda-ea". Throws LookupError otherwise.
Algorithm make_algorithm(const std::string& name, const AlgorithmOptions& options = {});
std::vector<std::string> algorithm_names();

}  // namespace iohbench
