#pragma once

#include <cstddef>
#include <optional>

#include "caldist/instance.hpp"
#include "caldist/oracle.hpp"

namespace caldist {

struct SolveOptions {
  // Accuracy for the ptas and pipeline solvers; ignored by exact ones.
  double eps = 0.1;
  // Overrides the solver's own state cap when set.
  std::optional<std::size_t> max_states;
  OracleOptions oracle;
};

// Dispatches to the named solver.
SolverResult solve(const Instance& inst, SolverKind solver, const SolveOptions& options = {});

}  // namespace caldist
