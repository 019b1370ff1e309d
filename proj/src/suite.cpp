#include "iohbench/suite.hpp"

#include <algorithm>
#include <cmath>

#include "iohbench/random.hpp"

namespace iohbench {

namespace {

// Stream tags for derive_seed; frozen in docs/formats.md.
constexpr std::uint64_t kTagSearchSpace = 1;  // XOR mask / permutation draws
constexpr std::uint64_t kTagObjective = 2;    // scale and shift draws
constexpr std::uint64_t kTagWeights = 3;      // linear function weights

void check_bits(BitView x, const char* what) {
  for (auto b : x) {
    if (b > 1) throw InputError(std::string(what) + ": entries must be 0 or 1");
  }
}

std::size_t count_ones(BitView x) {
  check_bits(x, "bit string");
  return static_cast<std::size_t>(std::count(x.begin(), x.end(), std::uint8_t{1}));
}

void require_dimension(BitView x, std::size_t n, const std::string& what) {
  if (x.size() != n) {
    throw InputError(what + ": expected dimension " + std::to_string(n) + ", got " +
                     std::to_string(x.size()));
  }
}

double objective_draw(int function_id, int key) {
  SeededGenerator gen(derive_seed({kTagObjective, static_cast<std::uint64_t>(function_id),
                                   static_cast<std::uint64_t>(key)}));
  return gen.uniform(-1000.0, 1000.0);
}

}  // namespace

double onemax(BitView x) {
  if (x.empty()) throw InputError("onemax: empty input");
  return static_cast<double>(count_ones(x));
}

double leading_ones(BitView x) {
  if (x.empty()) throw InputError("leading_ones: empty input");
  check_bits(x, "leading_ones");
  const auto it = std::find(x.begin(), x.end(), std::uint8_t{0});
  return static_cast<double>(it - x.begin());
}

double jump(BitView x, std::size_t k) {
  const std::size_t n = x.size();
  if (n == 0) throw InputError("jump: empty input");
  if (k < 1 || k > n) {
    throw InputError("jump: gap size k=" + std::to_string(k) + " outside [1, " + std::to_string(n) +
                     "]");
  }
  const std::size_t ones = count_ones(x);
  if (ones == n || ones + k <= n) return static_cast<double>(k + ones);
  return static_cast<double>(n - ones);
}

double linear(BitView x, std::span<const double> weights) {
  if (x.size() != weights.size()) {
    throw InputError("linear: " + std::to_string(weights.size()) + " weights for dimension " +
                     std::to_string(x.size()));
  }
  check_bits(x, "linear");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) sum += weights[i];
  }
  return sum;
}

BitString xor_shift(BitView x, BitView z) {
  if (x.size() != z.size()) throw InputError("xor_shift: length mismatch");
  check_bits(x, "xor_shift");
  check_bits(z, "xor_shift");
  BitString y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = static_cast<std::uint8_t>(x[i] ^ z[i]);
  return y;
}

bool is_permutation(std::span<const std::size_t> sigma) {
  std::vector<bool> seen(sigma.size(), false);
  for (auto s : sigma) {
    if (s >= sigma.size() || seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

Permutation inverse(std::span<const std::size_t> sigma) {
  if (!is_permutation(sigma)) throw InputError("inverse: not a permutation");
  Permutation inv(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
  return inv;
}

double Problem::operator()(BitView x) const {
  require_dimension(x, dimension, name);
  return evaluate_raw(x);
}

// ---- built-ins --------------------------------------------------------------

Problem make_onemax(std::size_t n) {
  return {1, "OneMax", n, [](BitView x) { return onemax(x); }, static_cast<double>(n)};
}

Problem make_leading_ones(std::size_t n) {
  return {2, "LeadingOnes", n, [](BitView x) { return leading_ones(x); }, static_cast<double>(n)};
}

Problem make_jump(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw InputError("jump: gap size out of range");
  return {3, "Jump", n, [k](BitView x) { return jump(x, k); }, static_cast<double>(n + k)};
}

std::vector<double> linear_weights(std::size_t n) {
  SeededGenerator gen(derive_seed({kTagWeights, 4, static_cast<std::uint64_t>(n)}));
  std::vector<double> w(n);
  for (auto& wi : w) wi = gen.uniform(0.0, 5.0);
  return w;
}

Problem make_linear(std::size_t n) {
  auto weights = linear_weights(n);
  double total = 0.0;
  for (double w : weights) total += w;
  return {4, "Linear", n,
          [w = std::move(weights)](BitView x) { return linear(x, w); }, total};
}

ProblemRegistry ProblemRegistry::with_builtins() {
  ProblemRegistry r;
  r.register_factory(1, "OneMax", make_onemax);
  r.register_factory(2, "LeadingOnes", make_leading_ones);
  r.register_factory(3, "Jump", [](std::size_t n) { return make_jump(n, 1); });
  r.register_factory(4, "Linear", make_linear);
  return r;
}

void ProblemRegistry::register_problem(int function_id, std::string name, Evaluator evaluator,
                                       std::optional<double> optimum_value) {
  if (!evaluator) throw RegistrationError("register_problem: empty evaluator");
  auto factory = [function_id, name, evaluator, optimum_value](std::size_t n) {
    return Problem{function_id, name, n, evaluator, optimum_value};
  };
  register_factory(function_id, std::move(name), std::move(factory));
}

void ProblemRegistry::register_factory(int function_id, std::string name, ProblemFactory factory) {
  if (function_id < 1) {
    throw RegistrationError("function id must be positive, got " + std::to_string(function_id));
  }
  if (factories_.contains(function_id)) {
    throw RegistrationError("function id " + std::to_string(function_id) + " already registered");
  }
  factories_.emplace(function_id, Entry{std::move(name), std::move(factory)});
}

const std::string& ProblemRegistry::name(int function_id) const {
  auto it = factories_.find(function_id);
  if (it == factories_.end()) throw LookupError("unknown function id " + std::to_string(function_id));
  return it->second.name;
}

Problem ProblemRegistry::make(int function_id, std::size_t dimension) const {
  auto it = factories_.find(function_id);
  if (it == factories_.end()) throw LookupError("unknown function id " + std::to_string(function_id));
  if (dimension < 1) throw InputError("dimension must be >= 1");
  Problem p = it->second.factory(dimension);
  p.function_id = function_id;
  p.dimension = dimension;
  return p;
}

std::vector<int> ProblemRegistry::ids() const {
  std::vector<int> out;
  for (const auto& [id, _] : factories_) out.push_back(id);
  return out;
}

// ---- instances --------------------------------------------------------------

InstanceSpec InstanceSpec::identity(std::size_t n) {
  InstanceSpec s;
  s.instance_id = 1;
  s.xor_mask.assign(n, 0);
  s.permutation.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.permutation[i] = i;
  return s;
}

InstanceSpec make_instance_spec(int function_id, int instance_id, std::size_t dimension) {
  if (dimension < 1) throw InputError("dimension must be >= 1");
  if (instance_id < 1 || instance_id > kMaxInstanceId) {
    throw InputError("instance id " + std::to_string(instance_id) + " outside [1, " +
                     std::to_string(kMaxInstanceId) + "]");
  }
  InstanceSpec spec = InstanceSpec::identity(dimension);
  spec.instance_id = instance_id;
  if (instance_id == 1) return spec;

  SeededGenerator space(derive_seed({kTagSearchSpace, static_cast<std::uint64_t>(function_id),
                                     static_cast<std::uint64_t>(instance_id)}));
  if (instance_id <= kLastXorInstance) {
    for (auto& bit : spec.xor_mask) bit = static_cast<std::uint8_t>(space.uniform() * 2.0);
  } else {
    // Swap loop as in the reference listing: always exchanges with slot 0.
    const auto n = static_cast<double>(dimension);
    for (std::size_t i = 0; i < dimension; ++i) {
      auto t = static_cast<std::size_t>(space.uniform() * n);
      std::swap(spec.permutation[0], spec.permutation[t]);
    }
  }
  spec.scale = std::fabs(objective_draw(function_id, instance_id + 100)) / 1000.0 * 4.8 + 0.2;
  spec.shift = objective_draw(function_id, instance_id);
  return spec;
}

InstancedProblem::InstancedProblem(Problem problem, InstanceSpec spec)
    : problem_(std::move(problem)), spec_(std::move(spec)) {
  const auto n = problem_.dimension;
  if (spec_.xor_mask.size() != n || spec_.permutation.size() != n) {
    throw InputError("instance spec does not match problem dimension");
  }
  if (!is_permutation(spec_.permutation)) throw InputError("instance spec: invalid permutation");
}

Evaluation InstancedProblem::evaluate(BitView x) const {
  require_dimension(x, dimension(), problem_.name);
  const BitString shifted = xor_shift(x, spec_.xor_mask);
  const BitString moved = permute<std::uint8_t>(shifted, spec_.permutation);
  const double raw = problem_.evaluate_raw(moved);
  return {raw, scale_and_shift(raw, spec_.scale, spec_.shift)};
}

InstancedProblem make_instance(const ProblemRegistry& registry, int function_id, int instance_id,
                               std::size_t dimension) {
  Problem problem = registry.make(function_id, dimension);
  return {std::move(problem), make_instance_spec(function_id, instance_id, dimension)};
}

}  // namespace iohbench
