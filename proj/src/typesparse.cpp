#include "caldist/typesparse.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "caldist/error.hpp"

namespace caldist {

double TypeIndex::frontier_count() const {
  double count = 1.0;
  for (const auto& t : types) count *= static_cast<double>(t.count() + 1);
  return count;
}

TypeIndex build_type_index(const Instance& inst, double tolerance) {
  TypeIndex index;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& e = inst[i];
    auto it = std::find_if(index.types.begin(), index.types.end(),
                           [&](const TypeIndex::Type& t) {
                             return std::abs(t.mass - e.mass) <= tolerance &&
                                    std::abs(t.mu - e.mu) <= tolerance;
                           });
    if (it == index.types.end()) {
      TypeIndex::Type t;
      t.mass = e.mass;
      t.mu = e.mu;
      index.types.push_back(std::move(t));
      it = std::prev(index.types.end());
    }
    it->members.push_back(i);
  }
  for (auto& t : index.types) {
    std::stable_sort(t.members.begin(), t.members.end(),
                     [&](std::size_t a, std::size_t b) { return inst[a].f < inst[b].f; });
    const std::size_t n = t.members.size();
    t.f_sorted.resize(n);
    t.prefix_mass.assign(n + 1, 0.0);
    t.prefix_mass_f.assign(n + 1, 0.0);
    t.prefix_mass_mu.assign(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = inst[t.members[j]];
      t.f_sorted[j] = e.f;
      t.prefix_mass[j + 1] = t.prefix_mass[j] + e.mass;
      t.prefix_mass_f[j + 1] = t.prefix_mass_f[j] + e.mass * e.f;
      t.prefix_mass_mu[j + 1] = t.prefix_mass_mu[j] + e.mass * e.mu;
    }
  }
  return index;
}

double slice_cost(const TypeIndex& index, const FrontierVector& from,
                  const FrontierVector& to) {
  double mass = 0.0;
  double positive = 0.0;
  for (std::size_t i = 0; i < index.k(); ++i) {
    const auto& t = index.types[i];
    mass += t.prefix_mass[to[i]] - t.prefix_mass[from[i]];
    positive += t.prefix_mass_mu[to[i]] - t.prefix_mass_mu[from[i]];
  }
  if (mass <= 0.0) return 0.0;
  const double mu = positive / mass;

  double cost = 0.0;
  for (std::size_t i = 0; i < index.k(); ++i) {
    const auto& t = index.types[i];
    const std::size_t lo = from[i];
    const std::size_t hi = to[i];
    if (lo == hi) continue;
    // First member of the run with f >= mu; everything before it is below.
    const std::size_t split = static_cast<std::size_t>(
        std::lower_bound(t.f_sorted.begin() + static_cast<std::ptrdiff_t>(lo),
                         t.f_sorted.begin() + static_cast<std::ptrdiff_t>(hi), mu) -
        t.f_sorted.begin());
    const double below_mass = t.prefix_mass[split] - t.prefix_mass[lo];
    const double below_mass_f = t.prefix_mass_f[split] - t.prefix_mass_f[lo];
    const double above_mass = t.prefix_mass[hi] - t.prefix_mass[split];
    const double above_mass_f = t.prefix_mass_f[hi] - t.prefix_mass_f[split];
    cost += (mu * below_mass - below_mass_f) + (above_mass_f - mu * above_mass);
  }
  return std::max(cost, 0.0);
}

SolverResult typesparse_caldist(const Instance& inst, const TypeSparseOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const TypeIndex index = build_type_index(inst);
  const std::size_t k = index.k();

  if (index.frontier_count() > static_cast<double>(options.max_states)) {
    throw Error(ErrorKind::kStateSpaceTooLarge,
                "type-sparse table needs " + std::to_string(index.frontier_count()) +
                    " states (k = " + std::to_string(k) +
                    "), limit max_states = " + std::to_string(options.max_states));
  }

  FrontierVector full(k);
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = 0; i < k; ++i) full[i] = index.types[i].count();
  for (std::size_t i = k; i-- > 1;) stride[i - 1] = stride[i] * (full[i] + 1);
  const std::size_t states = static_cast<std::size_t>(index.frontier_count());

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<double> opt(states, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parts(states, 0);
  std::vector<std::size_t> parent(states, kNone);
  opt[0] = 0.0;

  // Index order equals lexicographic order, so every m' <= m is final
  // before m is processed.
  FrontierVector m(k, 0);
  FrontierVector prev(k);
  for (std::size_t s = 1; s < states; ++s) {
    for (std::size_t i = k; i-- > 0;) {
      if (m[i] < full[i]) {
        ++m[i];
        break;
      }
      m[i] = 0;
    }

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_parts = kNone;
    std::size_t best_parent = kNone;

    prev = m;
    std::size_t p = s;
    while (true) {
      // Step to the lexicographic predecessor inside the box [0, m].
      std::size_t i = k;
      while (i-- > 0) {
        if (prev[i] > 0) {
          --prev[i];
          p -= stride[i];
          break;
        }
        prev[i] = m[i];
        p += m[i] * stride[i];
      }
      if (i == std::numeric_limits<std::size_t>::max()) break;

      const double candidate = opt[p] + slice_cost(index, prev, m);
      const std::size_t candidate_parts = parts[p] + 1;
      if (candidate < best - 1e-12 ||
          (std::abs(candidate - best) <= 1e-12 && candidate_parts < best_parts)) {
        best = candidate;
        best_parts = candidate_parts;
        best_parent = p;
      }
    }
    opt[s] = best;
    parts[s] = best_parts;
    parent[s] = best_parent;
  }

  // Walk the parent chain back from the full vector, labelling each slice.
  auto decode = [&](std::size_t s) {
    FrontierVector v(k);
    for (std::size_t i = 0; i < k; ++i) {
      v[i] = (s / stride[i]) % (full[i] + 1);
    }
    return v;
  };
  std::vector<std::size_t> labels(inst.size(), 0);
  std::size_t label = 0;
  for (std::size_t s = states - 1; s != 0; s = parent[s]) {
    const FrontierVector hi = decode(s);
    const FrontierVector lo = decode(parent[s]);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = lo[i]; j < hi[i]; ++j) {
        labels[index.types[i].members[j]] = label;
      }
    }
    ++label;
  }

  SolverResult result;
  result.value = opt[states - 1];
  result.witness = Partition(labels);
  result.solver = SolverKind::kTypeSparse;
  result.additive_error_budget = 0.0;
  result.wall_time = std::chrono::steady_clock::now() - start;
  result.details["types"] = static_cast<double>(k);
  result.details["states"] = static_cast<double>(states);
  return result;
}

}  // namespace caldist
