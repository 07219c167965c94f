#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tabfit/indicators.hpp"
#include "tabfit/table.hpp"

namespace tabfit {

// Before/after association diagnostics attached to a transform result.
// Odds ratios are filled for all-positive 2x2 tables, the LL matrices
// whenever the indicator's preconditions hold.
struct PreservedDiagnostics {
  std::optional<double> seed_odds_ratio;
  std::optional<double> output_odds_ratio;
  std::optional<LLMatrix> seed_ll;
  std::optional<LLMatrix> output_ll;
};

struct TrajectoryPoint {
  std::string step;  // "rows" or "cols"
  ContingencyTable table;
};

struct TransformResult {
  ContingencyTable table;
  std::size_t iterations = 0;
  double margin_residual = 0.0;  // max |margin - target| / target grand total
  bool converged = false;
  PreservedDiagnostics preserved;
  std::vector<TrajectoryPoint> trajectory;  // filled only when requested
};

}  // namespace tabfit
