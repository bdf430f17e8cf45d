#include "caldist/sparsify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "caldist/cost.hpp"
#include "caldist/error.hpp"

namespace caldist {
namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw Error(ErrorKind::kEpsOutOfRange,
                "eps must lie in (0, 1], got " + std::to_string(eps));
  }
}

// floor(v / step) * step. The nudge keeps exact multiples such as 0.7 / 0.1
// from landing one grid point low.
double round_down(double v, double step) {
  return std::min(1.0, std::floor(v / step + 1e-9) * step);
}

// Largest (1 + delta)^e not above mass.
double round_to_power(double mass, double delta) {
  const double base = 1.0 + delta;
  auto e = static_cast<long>(std::floor(std::log(mass) / std::log1p(delta)));
  while (std::pow(base, e + 1) <= mass) ++e;
  while (std::pow(base, e) > mass) --e;
  return std::pow(base, e);
}

}  // namespace

SparsifyResult type_sparsify_uniform(const Instance& inst, double eps) {
  check_eps(eps);
  if (!inst.is_uniform()) {
    throw Error(ErrorKind::kNotUniform, "uniform sparsifier needs equal masses");
  }
  std::vector<Element> out(inst.begin(), inst.end());
  for (auto& e : out) e.mu = round_down(e.mu, eps);
  SparsifyResult result{Instance(std::move(out)), 0.0};
  result.tv = tv_distance(inst, result.instance);
  return result;
}

SparsifyResult type_sparsify_general(const Instance& inst, double eps) {
  check_eps(eps);
  const double delta = eps / 4.0;
  const double cutoff = delta / static_cast<double>(inst.size());

  std::vector<Element> out(inst.begin(), inst.end());
  double surviving = 0.0;
  for (auto& e : out) {
    e.mu = round_down(e.mu, eps / 2.0);
    e.mass = e.mass <= cutoff ? 0.0 : round_to_power(e.mass, delta);
    surviving += e.mass;
  }
  for (auto& e : out) {
    e.mass /= surviving;
    if (e.mass == 0.0) e.mu = 0.0;
  }
  SparsifyResult result{Instance(std::move(out)), 0.0};
  result.tv = tv_distance(inst, result.instance);
  return result;
}

DiscretizeResult discretize_with_resolution(const Instance& inst, std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "resolution must be positive");
  const double grid = static_cast<double>(n);

  DiscretizeResult result;
  result.resolution = n;
  result.units.resize(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& e = inst[i];
    result.units[i][0] =
        static_cast<std::uint64_t>(std::floor(e.mass * (1.0 - e.mu) * grid + 1e-9));
    result.units[i][1] = static_cast<std::uint64_t>(std::floor(e.mass * e.mu * grid + 1e-9));
    result.denominator += result.units[i][0] + result.units[i][1];
  }
  if (result.denominator == 0) {
    throw Error(ErrorKind::kDegenerateInstance,
                "every joint mass floors to zero at N = " + std::to_string(n));
  }

  const double m = static_cast<double>(result.denominator);
  std::vector<Element> out(inst.begin(), inst.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto [zeros, ones] = result.units[i];
    out[i].mass = static_cast<double>(zeros + ones) / m;
    out[i].mu = zeros + ones == 0 ? 0.0
                                  : static_cast<double>(ones) / static_cast<double>(zeros + ones);
  }
  result.instance = Instance(std::move(out));
  result.tv = tv_distance(inst, result.instance);
  return result;
}

DiscretizeResult discretize(const Instance& inst, double eps) {
  check_eps(eps);
  const double target = 4.0 * static_cast<double>(inst.size()) / eps;
  std::uint64_t n = 1;
  while (static_cast<double>(n) < target) n <<= 1;
  return discretize_with_resolution(inst, n);
}

SolverResult pipeline_caldist(const Instance& inst, double eps,
                              const TypeSparseOptions& options) {
  check_eps(eps);
  const auto start = std::chrono::steady_clock::now();
  const bool uniform = inst.is_uniform();
  const SparsifyResult sparse = uniform ? type_sparsify_uniform(inst, eps / 10.0)
                                        : type_sparsify_general(inst, eps / 10.0);
  SolverResult result = typesparse_caldist(sparse.instance, options);
  result.solver = SolverKind::kPipeline;
  result.additive_error_budget = 5.0 * sparse.tv;
  result.wall_time = std::chrono::steady_clock::now() - start;
  result.details["eps"] = eps;
  result.details["tv"] = sparse.tv;
  result.details["uniform_sparsifier"] = uniform ? 1.0 : 0.0;
  return result;
}

}  // namespace caldist
