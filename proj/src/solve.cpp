#include "caldist/solve.hpp"

#include "caldist/ptas.hpp"
#include "caldist/sparsify.hpp"
#include "caldist/typesparse.hpp"

namespace caldist {

SolverResult solve(const Instance& inst, SolverKind solver, const SolveOptions& options) {
  switch (solver) {
    case SolverKind::kOracle:
      return oracle_caldist(inst, options.oracle);
    case SolverKind::kTypeSparse: {
      TypeSparseOptions ts;
      if (options.max_states) ts.max_states = *options.max_states;
      return typesparse_caldist(inst, ts);
    }
    case SolverKind::kPtas: {
      PtasOptions po;
      if (options.max_states) po.max_states = *options.max_states;
      return ptas_caldist(inst, options.eps, po);
    }
    case SolverKind::kPipeline: {
      TypeSparseOptions ts;
      if (options.max_states) ts.max_states = *options.max_states;
      return pipeline_caldist(inst, options.eps, ts);
    }
  }
  return oracle_caldist(inst, options.oracle);
}

}  // namespace caldist
