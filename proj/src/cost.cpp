#include "caldist/cost.hpp"

#include <cmath>
#include <map>

#include "caldist/error.hpp"

namespace caldist {

std::vector<std::size_t> indices_of(const Instance& inst,
                                    std::span<const std::string> ids) {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(inst.index_of(id));
  return out;
}

double mu_of_subset(const Instance& inst, std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorKind::kEmptySubset, "subset is empty");
  double mass = 0.0;
  double positive = 0.0;
  for (std::size_t i : subset) {
    mass += inst[i].mass;
    positive += inst[i].mass * inst[i].mu;
  }
  if (mass <= 0.0) throw Error(ErrorKind::kZeroMass, "subset carries no mass");
  return positive / mass;
}

double cost_of_subset(const Instance& inst, std::span<const std::size_t> subset) {
  const double mu = mu_of_subset(inst, subset);
  double cost = 0.0;
  for (std::size_t i : subset) cost += inst[i].mass * std::abs(inst[i].f - mu);
  return cost;
}

namespace {

void check_partition(const Instance& inst, const Partition& p) {
  if (p.size() != inst.size()) {
    throw Error(ErrorKind::kPartitionMismatch,
                "partition covers " + std::to_string(p.size()) +
                    " elements, instance has " + std::to_string(inst.size()));
  }
}

// Per-part label rate; parts without mass get 0.
std::vector<double> part_means(const Instance& inst, const Partition& p) {
  std::vector<double> mass(p.num_parts(), 0.0);
  std::vector<double> positive(p.num_parts(), 0.0);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    mass[p.part_of(i)] += inst[i].mass;
    positive[p.part_of(i)] += inst[i].mass * inst[i].mu;
  }
  std::vector<double> mu(p.num_parts(), 0.0);
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (mass[j] > 0.0) mu[j] = positive[j] / mass[j];
  }
  return mu;
}

}  // namespace

double cost_of_partition(const Instance& inst, const Partition& p) {
  check_partition(inst, p);
  const auto mu = part_means(inst, p);
  double cost = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    cost += inst[i].mass * std::abs(inst[i].f - mu[p.part_of(i)]);
  }
  return cost;
}

Predictor induced_predictor(const Instance& inst, const Partition& p) {
  check_partition(inst, p);
  const auto mu = part_means(inst, p);
  std::vector<double> g(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) g[i] = mu[p.part_of(i)];
  return Predictor(std::move(g));
}

bool is_calibrated(const Instance& inst, const Predictor& g, double tol) {
  if (g.size() != inst.size()) {
    throw Error(ErrorKind::kDomainMismatch, "predictor size differs from domain size");
  }
  struct Group {
    double mass = 0.0;
    double positive = 0.0;
  };
  std::map<double, Group> groups;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    auto& group = groups[g[i]];
    group.mass += inst[i].mass;
    group.positive += inst[i].mass * inst[i].mu;
  }
  for (const auto& [alpha, group] : groups) {
    if (group.mass <= 0.0) continue;
    if (std::abs(group.positive / group.mass - alpha) > tol) return false;
  }
  return true;
}

double l1_distance(const Instance& inst, const Predictor& f, const Predictor& g) {
  if (f.size() != inst.size() || g.size() != inst.size()) {
    throw Error(ErrorKind::kDomainMismatch, "predictor size differs from domain size");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    d += inst[i].mass * std::abs(f[i] - g[i]);
  }
  return d;
}

double tv_distance(const Instance& a, const Instance& b) {
  double total = 0.0;
  for (const auto& x : a) {
    double mass1 = 0.0;
    double mass0 = 0.0;
    if (auto j = b.find(x.id)) {
      mass1 = b[*j].mass * b[*j].mu;
      mass0 = b[*j].mass * (1.0 - b[*j].mu);
    }
    total += std::abs(x.mass * x.mu - mass1) +
             std::abs(x.mass * (1.0 - x.mu) - mass0);
  }
  for (const auto& y : b) {
    if (!a.find(y.id)) total += y.mass;
  }
  return 0.5 * total;
}

}  // namespace caldist
