// Shared helpers for the test binaries: seeded random instances and small
// brute-force references that do not go through the library's solvers.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "caldist/instance.hpp"
#include "caldist/ptas.hpp"
#include "caldist/sparsify.hpp"

namespace testing {

using caldist::Element;
using caldist::Instance;
using caldist::Partition;

inline std::vector<Element> with_ids(std::vector<Element> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].id.empty()) elements[i].id = "x" + std::to_string(i);
  }
  return elements;
}

// n elements with masses, mu and f all uniform at random.
inline Instance random_instance(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Element> e(n);
  double total = 0.0;
  for (auto& x : e) {
    x.mass = u(rng) + 1e-3;
    total += x.mass;
    x.mu = u(rng);
    x.f = u(rng);
  }
  for (auto& x : e) x.mass /= total;
  return Instance::normalized(with_ids(std::move(e)), caldist::kTolerance);
}

// At most `types` distinct (mass, mu) pairs drawn from a small palette.
inline Instance random_typed_instance(std::mt19937_64& rng, std::size_t n, std::size_t types) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> palette(types);
  for (auto& [w, mu] : palette) {
    w = 1.0 + std::floor(u(rng) * 4.0);
    mu = std::floor(u(rng) * 11.0) / 10.0;
  }
  std::uniform_int_distribution<std::size_t> pick(0, types - 1);
  std::vector<Element> e(n);
  double total = 0.0;
  for (auto& x : e) {
    const auto& [w, mu] = palette[pick(rng)];
    x.mass = w;
    x.mu = mu;
    x.f = u(rng);
    total += w;
  }
  for (auto& x : e) x.mass /= total;
  return Instance::normalized(with_ids(std::move(e)), caldist::kTolerance);
}

inline Instance random_uniform_noiseless(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Element> e(n);
  for (auto& x : e) {
    x.mass = 1.0 / static_cast<double>(n);
    x.mu = u(rng) < 0.5 ? 0.0 : 1.0;
    x.f = u(rng);
  }
  return Instance::normalized(with_ids(std::move(e)), caldist::kTolerance);
}

inline Partition random_partition(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> labels(n);
  for (auto& l : labels) l = pick(rng);
  return Partition(labels);
}

// Same support and f as `base`, masses and mu perturbed.
inline Instance perturbed(std::mt19937_64& rng, const Instance& base, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Element> e(base.begin(), base.end());
  double total = 0.0;
  for (auto& x : e) {
    x.mass = std::max(0.0, x.mass + scale * u(rng));
    x.mu = std::clamp(x.mu + scale * u(rng), 0.0, 1.0);
    total += x.mass;
  }
  if (total == 0.0) return base;
  for (auto& x : e) x.mass /= total;
  return Instance::normalized(std::move(e), caldist::kTolerance);
}

// Cost of one part, written out directly.
inline double part_cost(const Instance& inst, const std::vector<std::size_t>& part) {
  double w = 0.0;
  double y = 0.0;
  for (auto i : part) {
    w += inst[i].mass;
    y += inst[i].mass * inst[i].mu;
  }
  if (w == 0.0) return 0.0;
  double c = 0.0;
  for (auto i : part) c += inst[i].mass * std::abs(inst[i].f - y / w);
  return c;
}

// Exhaustive minimum over set partitions by recursion on "which earlier
// block does element i join". Independent of the library's oracle.
inline double brute_force_caldist(const Instance& inst) {
  const std::size_t n = inst.size();
  std::vector<std::vector<std::size_t>> blocks;
  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      double c = 0.0;
      for (const auto& b : blocks) c += part_cost(inst, b);
      best = std::min(best, c);
      return;
    }
    // Index loop: the recursive call appends to `blocks`.
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(i);
      self(self, i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({i});
    self(self, i + 1);
    blocks.pop_back();
  };
  rec(rec, 0);
  return best;
}

// Is there a subset of a summing to target?
inline bool subset_sum_yes(const std::vector<std::int64_t>& a, std::int64_t target) {
  const std::size_t n = a.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) s += a[i];
    }
    if (s == target) return true;
  }
  return false;
}

// Is there a subset of exactly half the entries summing to half the total?
inline bool balanced_yes(const std::vector<std::int64_t>& a) {
  const std::size_t n = a.size();
  const std::int64_t total = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  if (total % 2 != 0) return false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n / 2) continue;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) s += a[i];
    }
    if (2 * s == total) return true;
  }
  return false;
}

// Minimum of the PTAS proxy objective over assignments to k intervals,
// computed interval by interval over subsets (k * 3^n). Uses the same
// discretised instance as the solver but none of its state machinery.
inline double ptas_reference(const Instance& inst, double eps) {
  const auto cfg = caldist::PtasConfig::for_eps(eps);
  const auto d = caldist::discretize(inst, eps / 15.0);
  const std::size_t n = inst.size();
  const std::size_t k = cfg.k;
  const std::uint32_t full = (1u << n) - 1u;
  const double m = static_cast<double>(d.denominator);
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> best(full + 1, inf);
  best[0] = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double centre = (static_cast<double>(j) + 0.5) / static_cast<double>(k);
    std::vector<double> cost(full + 1, inf);
    for (std::uint32_t t = 0; t <= full; ++t) {
      std::uint64_t p0 = 0;
      std::uint64_t p1 = 0;
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(t >> i & 1u)) continue;
        p0 += d.units[i][0];
        p1 += d.units[i][1];
        const double w = static_cast<double>(d.units[i][0] + d.units[i][1]) / m;
        c += w * (std::abs(inst[i].f - centre) + 0.5 / static_cast<double>(k));
      }
      const std::uint64_t tot = p0 + p1;
      const bool ok =
          tot == 0 || (k * p1 >= j * tot && (j + 1 == k || k * p1 < (j + 1) * tot));
      if (ok) cost[t] = c;
    }
    std::vector<double> next(full + 1, inf);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      // t ranges over submasks of mask, including the empty one.
      for (std::uint32_t t = mask;; t = (t - 1) & mask) {
        const double v = best[mask ^ t] + cost[t];
        if (v < next[mask]) next[mask] = v;
        if (t == 0) break;
      }
    }
    best = std::move(next);
  }
  return best[full];
}

}  // namespace testing
