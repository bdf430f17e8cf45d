#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "caldist/instance.hpp"
#include "caldist/sparsify.hpp"

namespace caldist {

// Parameters of one run. Interval j (0-based) is [j/k, (j+1)/k), the last
// one closed.
struct PtasConfig {
  double eps = 0.0;
  std::size_t k = 0;  // ceil(3 / eps)
  std::uint64_t M = 0;

  static PtasConfig for_eps(double eps);
};

struct PtasOptions {
  // Cap on the number of states summed over all layers.
  std::size_t max_states = std::size_t{1} << 23;
};

struct PtasRun {
  SolverResult result;
  PtasConfig config;
  DiscretizeResult discretized;
  // Interval index chosen for every element (by position).
  std::vector<std::size_t> interval;
};

// Discretises with eps/15, then minimises the proxy cost
//   sum_x D'(x) * (|f(x) - (j + 1/2)/k| + 1/(2k))
// over assignments of elements to k intervals whose parts are empty or have
// label rate inside their interval. States are the per-interval label masses
// in units of 1/M.
//
// A state is dropped as soon as some non-empty part can no longer reach its
// interval by absorbing any subset of the elements still unplaced; this
// never removes a completable state.
//
// Throws kEpsOutOfRange, kStateSpaceTooLarge, kDegenerateInstance.
PtasRun ptas_solve(const Instance& inst, double eps, const PtasOptions& options = {});

// value >= CalDist - budget and value <= CalDist + eps, with
// budget = 5 * tv(inst, discretised instance).
SolverResult ptas_caldist(const Instance& inst, double eps,
                          const PtasOptions& options = {});

// True when the label mass pair (p0, p1) is empty or its rate lies in
// interval j of k. Exact integer arithmetic.
bool in_interval(std::uint64_t p0, std::uint64_t p1, std::size_t j, std::size_t k);

}  // namespace caldist
