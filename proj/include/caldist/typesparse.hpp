#pragma once

#include <cstddef>
#include <vector>

#include "caldist/instance.hpp"

namespace caldist {

// Elements grouped by type (mass, mu). Within a type the members are ordered
// by non-decreasing f, and prefix sums over that order let the cost of any
// contiguous run be evaluated in O(log n).
struct TypeIndex {
  struct Type {
    double mass = 0.0;
    double mu = 0.0;
    // Element positions, sorted by f (ties by position).
    std::vector<std::size_t> members;
    std::vector<double> f_sorted;
    // prefix_*[j] sums the first j members.
    std::vector<double> prefix_mass;
    std::vector<double> prefix_mass_f;
    std::vector<double> prefix_mass_mu;

    std::size_t count() const { return members.size(); }
  };

  std::vector<Type> types;

  std::size_t k() const { return types.size(); }
  // Product of (n_i + 1): the number of frontier vectors.
  double frontier_count() const;
};

// Two elements share a type iff their masses and mus agree within 1e-12.
// Types are numbered by first occurrence.
TypeIndex build_type_index(const Instance& inst, double tolerance = 1e-12);

// Per-type consumption counts m_i; the DP state.
using FrontierVector = std::vector<std::size_t>;

// Cost of the part that takes members (from[i], to[i]] of every type i.
// Zero when the slice carries no mass.
double slice_cost(const TypeIndex& index, const FrontierVector& from,
                  const FrontierVector& to);

struct TypeSparseOptions {
  std::size_t max_states = std::size_t{1} << 22;
};

// Exact distance from calibration via the dynamic program over contiguous
// partitions: opt(m) = min over m' < m of opt(m') + cost(slice(m', m)).
// Some optimal predictor keeps the f-order within every type, so restricting
// to per-type contiguous slices loses nothing.
//
// Predecessors m' are scanned in decreasing lexicographic order; ties in cost
// go to the candidate with fewer parts, then to the first one scanned.
// Throws kStateSpaceTooLarge when prod(n_i + 1) exceeds options.max_states.
SolverResult typesparse_caldist(const Instance& inst,
                                const TypeSparseOptions& options = {});

}  // namespace caldist
