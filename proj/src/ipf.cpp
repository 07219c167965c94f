#include "tabfit/ipf.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace tabfit {

namespace {

// Positive target over an all-zero slice can never be reached by scaling;
// zero target over a positive slice would have to destroy mass. Both are
// structural infeasibilities, caught up front.
void check_zero_pattern(const ContingencyTable& seed, const MarginTargets& targets) {
  MarginTargets seed_margins = margins(seed);
  for (std::size_t r = 0; r < seed.rows; ++r) {
    bool slice_zero = seed_margins.row_totals[r] == 0.0;
    bool target_zero = targets.row_totals[r] == 0.0;
    if (slice_zero && !target_zero) {
      std::ostringstream msg;
      msg << "ipf: row " << r + 1 << " of the seed is all zeros but its target total is "
          << targets.row_totals[r];
      throw InfeasibleTargetError(msg.str());
    }
    if (!slice_zero && target_zero) {
      std::ostringstream msg;
      msg << "ipf: row " << r + 1 << " of the seed has positive mass but a zero target total";
      throw InfeasibleTargetError(msg.str());
    }
  }
  for (std::size_t c = 0; c < seed.cols; ++c) {
    bool slice_zero = seed_margins.col_totals[c] == 0.0;
    bool target_zero = targets.col_totals[c] == 0.0;
    if (slice_zero && !target_zero) {
      std::ostringstream msg;
      msg << "ipf: column " << c + 1 << " of the seed is all zeros but its target total is "
          << targets.col_totals[c];
      throw InfeasibleTargetError(msg.str());
    }
    if (!slice_zero && target_zero) {
      std::ostringstream msg;
      msg << "ipf: column " << c + 1
          << " of the seed has positive mass but a zero target total";
      throw InfeasibleTargetError(msg.str());
    }
  }
}

// max |margin - target| over both margins, relative to the target grand total.
double margin_residual(const ContingencyTable& table, const MarginTargets& targets) {
  double worst = 0.0;
  for (std::size_t r = 0; r < table.rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < table.cols; ++c) sum += table.at(r, c);
    worst = std::max(worst, std::abs(sum - targets.row_totals[r]));
  }
  for (std::size_t c = 0; c < table.cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < table.rows; ++r) sum += table.at(r, c);
    worst = std::max(worst, std::abs(sum - targets.col_totals[c]));
  }
  return worst / targets.grand_total();
}

void fill_diagnostics(const ContingencyTable& seed, const ContingencyTable& output,
                      PreservedDiagnostics& out) {
  if (seed.rows == 2 && seed.cols == 2) {
    bool all_positive = true;
    for (double v : seed.cells) all_positive = all_positive && v > 0.0;
    if (all_positive) {
      out.seed_odds_ratio = odds_ratio(seed);
      out.output_odds_ratio = odds_ratio(output);
    }
  }
  try {
    out.seed_ll = liu_lu_generalized(seed);
    out.output_ll = liu_lu_generalized(output);
  } catch (const Error&) {
    out.seed_ll.reset();
    out.output_ll.reset();
  }
}

}  // namespace

ContingencyTable ipf_step_rows(const ContingencyTable& table, const MarginTargets& targets) {
  require_valid(table, "ipf_step_rows");
  require_valid(targets, "ipf_step_rows");
  require_compatible(table, targets, "ipf_step_rows");
  check_zero_pattern(table, targets);
  ContingencyTable out = table;
  for (std::size_t r = 0; r < table.rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < table.cols; ++c) sum += table.at(r, c);
    if (sum == 0.0) continue;  // zero slice with zero target, stays zero
    double factor = targets.row_totals[r] / sum;
    for (std::size_t c = 0; c < table.cols; ++c) out.at(r, c) = table.at(r, c) * factor;
  }
  return out;
}

ContingencyTable ipf_step_cols(const ContingencyTable& table, const MarginTargets& targets) {
  require_valid(table, "ipf_step_cols");
  require_valid(targets, "ipf_step_cols");
  require_compatible(table, targets, "ipf_step_cols");
  check_zero_pattern(table, targets);
  ContingencyTable out = table;
  for (std::size_t c = 0; c < table.cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < table.rows; ++r) sum += table.at(r, c);
    if (sum == 0.0) continue;
    double factor = targets.col_totals[c] / sum;
    for (std::size_t r = 0; r < table.rows; ++r) out.at(r, c) = table.at(r, c) * factor;
  }
  return out;
}

TransformResult ipf_fit(const ContingencyTable& seed, const MarginTargets& targets,
                        const IpfConfig& config) {
  require_valid(seed, "ipf_fit");
  require_valid(targets, "ipf_fit");
  require_compatible(seed, targets, "ipf_fit");
  if (config.max_iterations < 1) throw DomainError("ipf_fit: max_iterations must be >= 1");
  if (!(config.tolerance > 0.0)) throw DomainError("ipf_fit: tolerance must be positive");
  check_zero_pattern(seed, targets);

  TransformResult result;
  result.table = seed;
  result.margin_residual = margin_residual(seed, targets);
  if (result.margin_residual <= config.tolerance) {
    result.converged = true;
    result.iterations = 0;
    fill_diagnostics(seed, result.table, result.preserved);
    return result;
  }

  for (std::size_t k = 1; k <= config.max_iterations; ++k) {
    result.table = ipf_step_rows(result.table, targets);
    if (config.record_trajectory) result.trajectory.push_back({"rows", result.table});
    result.table = ipf_step_cols(result.table, targets);
    if (config.record_trajectory) result.trajectory.push_back({"cols", result.table});
    result.iterations = k;
    result.margin_residual = margin_residual(result.table, targets);
    if (result.margin_residual <= config.tolerance) {
      result.converged = true;
      break;
    }
  }
  fill_diagnostics(seed, result.table, result.preserved);
  return result;
}

}  // namespace tabfit
