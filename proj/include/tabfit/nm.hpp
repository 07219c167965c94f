#pragma once

#include <vector>

#include "tabfit/indicators.hpp"
#include "tabfit/table.hpp"
#include "tabfit/transform.hpp"

namespace tabfit {

// One per-cut instance of the closed-form 2x2 solution inside the general
// transform: tail_sum is the solved mass strictly below/right of the cut,
//
//   tail_sum = LL_source * (min target high margin - int(R_target)) + int(R_target)
//
// so int(R_target) <= tail_sum <= min target high margin.
struct NmSubproblem {
  AggregationCut cut;
  LLValue source_ll;
  double target_expected_hh = 0.0;  // int(R) of the cut-aggregated targets
  double target_min_margin = 0.0;   // min of the cut-aggregated high margins
  double tail_sum = 0.0;
};

// The per-cut solutions for a source table and target margins, without the
// reconstruction step. Exposed for diagnostics and tests.
std::vector<NmSubproblem> nm_subproblems(const ContingencyTable& source,
                                         const MarginTargets& targets);

// Rank-preserving transform: produces the table with the target margins whose
// Liu-Lu indicator (matrix-valued, at every cut) equals the source's. Each
// cut is solved in closed form for its tail sum; the cells then follow by
// inclusion-exclusion over the tail-sum grid, with boundary values taken from
// the target margins. A negative reconstructed cell means no nonnegative
// table preserves the indicator under these targets; that raises
// InfeasibleTargetError naming the cell (no silent clamping beyond float
// noise at 1e-9 relative).
TransformResult nm_fit(const ContingencyTable& source, const MarginTargets& targets);

// 2x2 entry point: same computation, restricted to 2x2 inputs where the
// closed form is always feasible.
TransformResult nm_fit_2x2(const ContingencyTable& source, const MarginTargets& targets);

}  // namespace tabfit
