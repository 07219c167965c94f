#pragma once

#include <cstddef>

#include "tabfit/table.hpp"
#include "tabfit/transform.hpp"

namespace tabfit {

struct IpfConfig {
  std::size_t max_iterations = 1000;
  // Stop when max |margin - target| / target grand total <= tolerance,
  // checked after each column step (and once up front).
  double tolerance = 1e-10;
  bool record_trajectory = false;
};

// Iterative proportional fitting (RAS): alternately scales rows then columns
// of the seed onto the target totals. One iteration = one row step plus one
// column step. Preserves every odds-ratio of the seed and keeps structural
// zeros. Non-convergence within max_iterations yields converged = false, not
// an exception; structurally infeasible zero patterns (positive target total
// over an all-zero seed slice, or zero target total over a positive slice)
// throw InfeasibleTargetError.
TransformResult ipf_fit(const ContingencyTable& seed, const MarginTargets& targets,
                        const IpfConfig& config = {});

// Single scaling steps. Each row (column) of the result is the input row
// (column) times one nonnegative factor; the scaled totals match the targets
// exactly.
ContingencyTable ipf_step_rows(const ContingencyTable& table, const MarginTargets& targets);
ContingencyTable ipf_step_cols(const ContingencyTable& table, const MarginTargets& targets);

}  // namespace tabfit
