#include "caldist/oracle.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "caldist/error.hpp"

namespace caldist {
namespace {

// Restricted-growth-string enumeration: element i may join any part already
// opened by elements 0..i-1 or open the next one. Every set partition is
// produced exactly once.
class RgsSearch {
 public:
  explicit RgsSearch(const Instance& inst)
      : inst_(inst),
        labels_(inst.size(), 0),
        mass_(inst.size(), 0.0),
        positive_(inst.size(), 0.0) {}

  void run() { visit(0, 0); }

  double best_cost() const { return best_cost_; }
  const std::vector<std::size_t>& best_labels() const { return best_labels_; }
  std::uint64_t visited() const { return visited_; }

 private:
  void visit(std::size_t i, std::size_t used) {
    if (i == inst_.size()) {
      evaluate(used);
      return;
    }
    for (std::size_t j = 0; j <= used; ++j) {
      labels_[i] = j;
      visit(i + 1, j == used ? used + 1 : used);
    }
  }

  void evaluate(std::size_t used) {
    ++visited_;
    std::fill_n(mass_.begin(), used, 0.0);
    std::fill_n(positive_.begin(), used, 0.0);
    for (std::size_t i = 0; i < inst_.size(); ++i) {
      mass_[labels_[i]] += inst_[i].mass;
      positive_[labels_[i]] += inst_[i].mass * inst_[i].mu;
    }
    double cost = 0.0;
    for (std::size_t i = 0; i < inst_.size(); ++i) {
      const std::size_t j = labels_[i];
      if (mass_[j] > 0.0) {
        cost += inst_[i].mass * std::abs(inst_[i].f - positive_[j] / mass_[j]);
      }
    }
    if (cost < best_cost_) {
      best_cost_ = cost;
      best_labels_ = labels_;
    }
  }

  const Instance& inst_;
  std::vector<std::size_t> labels_;
  std::vector<double> mass_;
  std::vector<double> positive_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_labels_;
  std::uint64_t visited_ = 0;
};

// Builds partitions one part at a time: the lowest unassigned element opens a
// part and a subset of the remaining elements joins it. A completed part's
// cost never changes afterwards, so the running sum is a lower bound.
class PrunedSearch {
 public:
  explicit PrunedSearch(const Instance& inst)
      : inst_(inst), labels_(inst.size(), 0) {}

  void run() {
    const std::uint32_t all =
        inst_.size() == 32 ? ~0u : (1u << inst_.size()) - 1u;
    grow(all, 0.0, 0);
  }

  double best_cost() const { return best_cost_; }
  const std::vector<std::size_t>& best_labels() const { return best_labels_; }

 private:
  double part_cost(std::uint32_t members) const {
    double mass = 0.0;
    double positive = 0.0;
    for (std::uint32_t s = members; s != 0; s &= s - 1) {
      const auto& e = inst_[std::countr_zero(s)];
      mass += e.mass;
      positive += e.mass * e.mu;
    }
    if (mass <= 0.0) return 0.0;
    const double mu = positive / mass;
    double cost = 0.0;
    for (std::uint32_t s = members; s != 0; s &= s - 1) {
      const auto& e = inst_[std::countr_zero(s)];
      cost += e.mass * std::abs(e.f - mu);
    }
    return cost;
  }

  void grow(std::uint32_t remaining, double partial, std::size_t next_label) {
    if (remaining == 0) {
      if (partial < best_cost_) {
        best_cost_ = partial;
        best_labels_ = labels_;
      }
      return;
    }
    const std::uint32_t lowest = remaining & (~remaining + 1u);
    const std::uint32_t rest = remaining & ~lowest;
    // Subsets of `rest` in increasing numeric order, starting with the empty one.
    std::uint32_t extra = 0;
    while (true) {
      const std::uint32_t members = lowest | extra;
      const double cost = partial + part_cost(members);
      if (cost < best_cost_) {
        for (std::uint32_t s = members; s != 0; s &= s - 1) {
          labels_[std::countr_zero(s)] = next_label;
        }
        grow(rest & ~extra, cost, next_label + 1);
      }
      if (extra == rest) break;
      extra = (extra - rest) & rest;
    }
  }

  const Instance& inst_;
  std::vector<std::size_t> labels_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_labels_;
};

}  // namespace

SolverResult oracle_caldist(const Instance& inst, const OracleOptions& options) {
  if (inst.size() > options.max_n) {
    throw Error(ErrorKind::kDomainTooLarge,
                "domain has " + std::to_string(inst.size()) +
                    " elements, oracle limit max_n = " + std::to_string(options.max_n));
  }
  if (options.prune && inst.size() > 32) {
    throw Error(ErrorKind::kDomainTooLarge, "pruned oracle supports at most 32 elements");
  }
  const auto start = std::chrono::steady_clock::now();

  double best = 0.0;
  std::vector<std::size_t> labels;
  SolverResult result;
  if (options.prune) {
    PrunedSearch search(inst);
    search.run();
    best = search.best_cost();
    labels = search.best_labels();
  } else {
    RgsSearch search(inst);
    search.run();
    best = search.best_cost();
    labels = search.best_labels();
    result.details["partitions"] = static_cast<double>(search.visited());
  }

  result.value = best;
  result.witness = Partition(labels);
  result.solver = SolverKind::kOracle;
  result.additive_error_budget = 0.0;
  result.wall_time = std::chrono::steady_clock::now() - start;
  result.details["pruned"] = options.prune ? 1.0 : 0.0;
  return result;
}

}  // namespace caldist
