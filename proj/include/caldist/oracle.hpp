#pragma once

#include <cstddef>

#include "caldist/instance.hpp"

namespace caldist {

struct OracleOptions {
  // Bell(13) is about 2.8e7 partitions.
  std::size_t max_n = 13;
  // Enumerate part by part and cut branches whose completed parts already
  // cost at least the incumbent. Same value; the witness may be a different
  // optimal partition.
  bool prune = false;
};

// Exact distance from calibration by minimising the partition cost over every
// set partition of the domain.
//
// Without pruning, partitions are visited as restricted-growth strings in
// lexicographic order and the first optimum found is kept as the witness.
// Throws kDomainTooLarge when the domain exceeds `options.max_n`.
SolverResult oracle_caldist(const Instance& inst, const OracleOptions& options = {});

}  // namespace caldist
