#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "caldist/instance.hpp"
#include "caldist/typesparse.hpp"

namespace caldist {

struct SparsifyResult {
  Instance instance;
  // tv_distance(input, instance), measured rather than bounded.
  double tv = 0.0;
};

// Rounds every mu down to a multiple of eps. Requires equal masses.
// Throws kNotUniform, kEpsOutOfRange.
SparsifyResult type_sparsify_uniform(const Instance& inst, double eps);

// Rounds mu down to a multiple of eps/2, then masses: with delta = eps/4,
// masses at most delta/|X| drop to zero and the rest round down to a power
// of (1 + delta). Masses are renormalised by their surviving sum.
// Throws kEpsOutOfRange.
SparsifyResult type_sparsify_general(const Instance& inst, double eps);

struct DiscretizeResult {
  Instance instance;
  double tv = 0.0;
  // N: the grid the joint masses were floored to.
  std::uint64_t resolution = 0;
  // M = sum of floor(D(x, y) * N); every output joint mass is a multiple of 1/M.
  std::uint64_t denominator = 0;
  // Joint masses in units of 1/M, per element: {y = 0, y = 1}.
  std::vector<std::array<std::uint64_t, 2>> units;
};

// Floors each joint mass to the grid 1/N, N the smallest power of two with
// N >= 4|X|/eps, then rescales by M. mu is recomputed from the new joint.
// Throws kEpsOutOfRange, kDegenerateInstance when every cell floors to 0.
DiscretizeResult discretize(const Instance& inst, double eps);
// Same with an explicit grid N.
DiscretizeResult discretize_with_resolution(const Instance& inst, std::uint64_t n);

// Sparsify with eps/10 (uniform rounding when the marginal is uniform,
// general rounding otherwise), then solve exactly on the result.
// additive_error_budget = 5 * achieved tv.
SolverResult pipeline_caldist(const Instance& inst, double eps,
                              const TypeSparseOptions& options = {});

}  // namespace caldist
