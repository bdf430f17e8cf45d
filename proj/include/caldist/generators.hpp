#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "caldist/instance.hpp"

namespace caldist {

// Subset sum: is there a subset of `a` summing to theta?
// Requires positive entries and 1 <= theta <= sum(a) / 2.
class SspInstance {
 public:
  SspInstance(std::vector<std::int64_t> a, std::int64_t theta);

  const std::vector<std::int64_t>& a() const { return a_; }
  std::int64_t theta() const { return theta_; }
  std::int64_t sum() const { return sum_; }

 private:
  std::vector<std::int64_t> a_;
  std::int64_t theta_;
  std::int64_t sum_;
};

// 2k near-equal positive integers: max(a) / min(a) <= 1 + 1/(100k).
// Yes iff some k of them sum to half the total.
class BalancedSspInstance {
 public:
  explicit BalancedSspInstance(std::vector<std::int64_t> a);

  const std::vector<std::int64_t>& a() const { return a_; }
  std::size_t k() const { return a_.size() / 2; }
  std::int64_t sum() const { return sum_; }

 private:
  std::vector<std::int64_t> a_;
  std::int64_t sum_;
};

struct ReductionInstance {
  Instance instance;
  // Yes iff CalDist <= threshold.
  double threshold = 0.0;
};

// Four points of mass 1/4 with mu = (0, 1, 0, 1) and
// f = (1/2 - eps, 1/2 - eps, 1/2 + eps, 1/2 + eps). eps in (0, 1/6).
Instance gen_bghn(double eps);

// n + 3 noiseless elements; threshold alpha * p* with p* = theta / (4S) and
// alpha = p* / (1 - 2p*).
ReductionInstance gen_noiseless_reduction(const SspInstance& ssp);

// 6k elements of mass 1/(6k); threshold 1/(36k). Throws kInvalidArgument
// when some a_i exceeds S/2 (possible only for k = 1).
ReductionInstance gen_uniform_reduction(const BalancedSspInstance& bssp);
// As above with every x_i at mu = 1/2 + 1/(2k).
Instance gen_rounded_uniform_reduction(const BalancedSspInstance& bssp);

// Pads a partition instance with n copies of M = 100 n S after adding M to
// every entry.
BalancedSspInstance partition_to_balanced_ssp(const std::vector<std::int64_t>& a);

enum class Signature { kRegularMultiple, kImbalanced, kCostly };

std::string_view to_string(Signature s);

// First branch that holds, in this order:
//   regular_multiple  (a, b, c) = a * (1, 2, 0) or a * (1, 0, 2), a > 0
//   imbalanced        a > (b + c) / 2
//   costly            with mu = (6a - 3b) / (a + b + c):
//                     (a + b) max(-mu, 0) + c max(2 - mu, 0) >= 1
// Throws kAllZero for (0, 0, 0) and std::logic_error if no branch holds.
Signature classify_signature(std::int64_t a, std::int64_t b, std::int64_t c);

enum class DistinguishingMode { kPure, kMixed };

// Ids "bot", "x-", "x+", "x1".."x{4k}". In mixed mode each x_i gets mu 0 or 1
// from the top bit of successive SplitMix64(seed) outputs.
Instance gen_distinguishing(std::size_t k, double gamma, DistinguishingMode mode,
                            std::uint64_t seed);

// Ids "1".."k", mass 1/k, mu = f = 1/3 + i/(3k).
Instance gen_one_sided_lb(std::size_t k);

}  // namespace caldist
