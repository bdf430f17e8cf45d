#include "caldist/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "caldist/error.hpp"
#include "caldist/rng.hpp"

namespace caldist {
namespace {

std::int64_t checked_sum(const std::vector<std::int64_t>& a, std::string_view what) {
  if (a.empty()) {
    throw Error(ErrorKind::kInvalidArgument, std::string(what) + ": empty list");
  }
  for (auto v : a) {
    if (v <= 0) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(what) + ": entries must be positive");
    }
  }
  return std::accumulate(a.begin(), a.end(), std::int64_t{0});
}

double ratio(std::int64_t num, std::int64_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

SspInstance::SspInstance(std::vector<std::int64_t> a, std::int64_t theta)
    : a_(std::move(a)), theta_(theta), sum_(checked_sum(a_, "SSP")) {
  if (theta_ < 1 || 2 * theta_ > sum_) {
    throw Error(ErrorKind::kInvalidArgument,
                "SSP: theta must lie in [1, S/2], got " + std::to_string(theta_) +
                    " with S = " + std::to_string(sum_));
  }
}

BalancedSspInstance::BalancedSspInstance(std::vector<std::int64_t> a)
    : a_(std::move(a)), sum_(checked_sum(a_, "Balanced SSP")) {
  if (a_.size() % 2 != 0) {
    throw Error(ErrorKind::kInvalidArgument, "Balanced SSP: needs an even number of entries");
  }
  const auto [lo, hi] = std::minmax_element(a_.begin(), a_.end());
  const auto half = static_cast<std::int64_t>(k());
  // hi / lo <= 1 + 1/(100k)
  if (*hi * 100 * half > *lo * (100 * half + 1)) {
    throw Error(ErrorKind::kInvalidArgument,
                "Balanced SSP: max/min exceeds 1 + 1/(100k) (max " + std::to_string(*hi) +
                    ", min " + std::to_string(*lo) + ")");
  }
}

Instance gen_bghn(double eps) {
  if (!(eps > 0.0 && eps < 1.0 / 6.0)) {
    throw Error(ErrorKind::kEpsOutOfRange, "bghn: eps must lie in (0, 1/6)");
  }
  return Instance({{"x0-", 0.25, 0.0, 0.5 - eps},
                   {"x1-", 0.25, 1.0, 0.5 - eps},
                   {"x0+", 0.25, 0.0, 0.5 + eps},
                   {"x1+", 0.25, 1.0, 0.5 + eps}});
}

ReductionInstance gen_noiseless_reduction(const SspInstance& ssp) {
  const std::int64_t s = ssp.sum();
  const std::int64_t theta = ssp.theta();
  // alpha = theta / (2(2S - theta)), alpha * p* = theta^2 / (8S(2S - theta)).
  const double high = 0.5 + ratio(theta, 2 * (2 * s - theta));

  std::vector<Element> elements;
  elements.push_back({"x0", ratio(2 * s - theta, 8 * s), 0.0, 0.5});
  elements.push_back({"x1", ratio(2 * s + theta, 8 * s), 1.0, 0.5});
  for (std::size_t i = 0; i < ssp.a().size(); ++i) {
    elements.push_back({"x0+_" + std::to_string(i + 1), ratio(ssp.a()[i], 4 * s), 0.0, high});
  }
  elements.push_back({"x1+", 0.25, 1.0, high});
  return {Instance(std::move(elements)), ratio(theta * theta, 8 * s * (2 * s - theta))};
}

namespace {

Instance uniform_reduction(const BalancedSspInstance& bssp, bool rounded) {
  const auto k = static_cast<std::int64_t>(bssp.k());
  const std::int64_t s = bssp.sum();
  const std::size_t n = bssp.a().size();
  const double mass = ratio(1, 6 * k);
  // mu(x_i) = 1/2 + a_i / S must stay at most 1. Only binds when k = 1.
  const auto top = *std::max_element(bssp.a().begin(), bssp.a().end());
  if (2 * top > s) {
    throw Error(ErrorKind::kInvalidArgument,
                "uniform reduction: needs every a_i <= S/2 so that mu stays in [0, 1]");
  }

  std::vector<Element> elements;
  for (std::size_t i = 0; i < n; ++i) {
    const double mu = rounded ? 0.5 + ratio(1, 2 * k) : 0.5 + ratio(bssp.a()[i], s);
    elements.push_back({"x" + std::to_string(i + 1), mass, mu, 0.5});
  }
  for (std::size_t i = 0; i < n; ++i) {
    elements.push_back({"x'" + std::to_string(i + 1), mass, 0.5 - ratio(1, 4 * k), 0.5});
  }
  for (std::size_t i = 0; i < n; ++i) {
    elements.push_back({"x''" + std::to_string(i + 1), mass, 0.5, 0.5 + ratio(1, 6 * k)});
  }
  return Instance(std::move(elements));
}

}  // namespace

ReductionInstance gen_uniform_reduction(const BalancedSspInstance& bssp) {
  const auto k = static_cast<std::int64_t>(bssp.k());
  return {uniform_reduction(bssp, false), ratio(1, 36 * k)};
}

Instance gen_rounded_uniform_reduction(const BalancedSspInstance& bssp) {
  return uniform_reduction(bssp, true);
}

BalancedSspInstance partition_to_balanced_ssp(const std::vector<std::int64_t>& a) {
  const std::int64_t s = checked_sum(a, "partition");
  const auto n = static_cast<std::int64_t>(a.size());
  const std::int64_t big = 100 * n * s;
  std::vector<std::int64_t> out;
  out.reserve(2 * a.size());
  for (auto v : a) out.push_back(v + big);
  out.insert(out.end(), a.size(), big);
  return BalancedSspInstance(std::move(out));
}

std::string_view to_string(Signature s) {
  switch (s) {
    case Signature::kRegularMultiple: return "regular_multiple";
    case Signature::kImbalanced: return "imbalanced";
    case Signature::kCostly: return "costly";
  }
  return "unknown";
}

Signature classify_signature(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (a < 0 || b < 0 || c < 0) {
    throw Error(ErrorKind::kInvalidArgument, "signature entries must be non-negative");
  }
  if (a == 0 && b == 0 && c == 0) {
    throw Error(ErrorKind::kAllZero, "signature (0, 0, 0)");
  }
  if (a > 0 && ((b == 2 * a && c == 0) || (b == 0 && c == 2 * a))) {
    return Signature::kRegularMultiple;
  }
  if (2 * a > b + c) return Signature::kImbalanced;
  // Scaled by T = a + b + c so everything stays integral.
  const std::int64_t t = a + b + c;
  const std::int64_t mu_t = 6 * a - 3 * b;
  if ((a + b) * std::max<std::int64_t>(-mu_t, 0) + c * std::max<std::int64_t>(2 * t - mu_t, 0) >=
      t) {
    return Signature::kCostly;
  }
  throw std::logic_error("classify_signature: no branch holds for (" + std::to_string(a) + ", " +
                         std::to_string(b) + ", " + std::to_string(c) + ")");
}

Instance gen_distinguishing(std::size_t k, double gamma, DistinguishingMode mode,
                            std::uint64_t seed) {
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "distinguishing: k must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "distinguishing: gamma must lie in (0, 1)");
  }
  SplitMix64 rng(seed);
  std::vector<Element> elements;
  elements.push_back({"bot", 1.0 - gamma, 0.5, 0.5});
  elements.push_back({"x-", gamma / 4.0, 0.5, 1.0 / 3.0});
  elements.push_back({"x+", gamma / 4.0, 0.5, 2.0 / 3.0});
  const double mass = gamma / (8.0 * static_cast<double>(k));
  for (std::size_t i = 0; i < 4 * k; ++i) {
    const double mu = mode == DistinguishingMode::kPure ? 0.5 : (rng.coin() ? 1.0 : 0.0);
    elements.push_back({"x" + std::to_string(i + 1), mass, mu, 0.5});
  }
  return Instance::normalized(std::move(elements), kTolerance);
}

Instance gen_one_sided_lb(std::size_t k) {
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "one-sided: k must be >= 1");
  const double kk = static_cast<double>(k);
  std::vector<Element> elements;
  for (std::size_t i = 1; i <= k; ++i) {
    const double v = 1.0 / 3.0 + static_cast<double>(i) / (3.0 * kk);
    elements.push_back({std::to_string(i), 1.0 / kk, v, v});
  }
  return Instance::normalized(std::move(elements), kTolerance);
}

}  // namespace caldist
