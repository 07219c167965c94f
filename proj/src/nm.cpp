#include "tabfit/nm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace tabfit {

namespace {

// Aggregated high-block margins of the targets across a cut: the row total
// over rows > i and the column total over cols > j.
void cut_high_margins(const MarginTargets& targets, const AggregationCut& cut, double& row_h,
                      double& col_h) {
  row_h = 0.0;
  col_h = 0.0;
  for (std::size_t r = cut.i; r < targets.row_totals.size(); ++r) row_h += targets.row_totals[r];
  for (std::size_t c = cut.j; c < targets.col_totals.size(); ++c) col_h += targets.col_totals[c];
}

void fill_diagnostics(const ContingencyTable& source, const ContingencyTable& output,
                      PreservedDiagnostics& out) {
  if (source.rows == 2 && source.cols == 2) {
    bool src_positive = true, out_positive = true;
    for (double v : source.cells) src_positive = src_positive && v > 0.0;
    for (double v : output.cells) out_positive = out_positive && v > 0.0;
    if (src_positive) out.seed_odds_ratio = odds_ratio(source);
    if (out_positive) out.output_odds_ratio = odds_ratio(output);
  }
  try {
    out.seed_ll = liu_lu_generalized(source);
    out.output_ll = liu_lu_generalized(output);
  } catch (const Error&) {
    out.seed_ll.reset();
    out.output_ll.reset();
  }
}

}  // namespace

std::vector<NmSubproblem> nm_subproblems(const ContingencyTable& source,
                                         const MarginTargets& targets) {
  require_valid(source, "nm_fit");
  require_valid(targets, "nm_fit");
  require_compatible(source, targets, "nm_fit");
  LLMatrix source_ll = liu_lu_generalized(source);
  double n = targets.grand_total();

  std::vector<NmSubproblem> out;
  out.reserve(source_ll.rows * source_ll.cols);
  for (std::size_t i = 1; i <= source_ll.rows; ++i) {
    for (std::size_t j = 1; j <= source_ll.cols; ++j) {
      NmSubproblem sub;
      sub.cut = {i, j};
      sub.source_ll = source_ll.at(i, j);
      double row_h, col_h;
      cut_high_margins(targets, sub.cut, row_h, col_h);
      sub.target_expected_hh = std::floor(row_h * col_h / n);
      sub.target_min_margin = std::min(row_h, col_h);
      if (sub.target_min_margin - sub.target_expected_hh <= 0.0) {
        std::ostringstream msg;
        msg << "nm_fit: targets are degenerate at cut (" << i << "," << j
            << "): min high margin " << sub.target_min_margin << " does not exceed int(R) = "
            << sub.target_expected_hh;
        throw DegenerateMarginError(msg.str());
      }
      // The closed-form solution for the high-block mass: position the cell
      // at the source's rank fraction between the independence floor and the
      // margin-feasible maximum.
      sub.tail_sum = sub.source_ll.value * (sub.target_min_margin - sub.target_expected_hh) +
                     sub.target_expected_hh;
      out.push_back(sub);
    }
  }
  return out;
}

TransformResult nm_fit(const ContingencyTable& source, const MarginTargets& targets) {
  std::vector<NmSubproblem> subs = nm_subproblems(source, targets);
  std::size_t n = source.rows, m = source.cols;
  double total = targets.grand_total();

  // Tail-sum grid T: T[i][j] is the output mass strictly below row i and
  // right of column j (0-based grid indices 0..n, 0..m). Interior values come
  // from the per-cut solutions, boundaries from the target margins.
  std::vector<std::vector<double>> tail(n + 1, std::vector<double>(m + 1, 0.0));
  tail[0][0] = total;
  for (std::size_t i = 1; i <= n; ++i) {
    tail[i][0] = 0.0;
    for (std::size_t r = i; r < n; ++r) tail[i][0] += targets.row_totals[r];
  }
  for (std::size_t j = 1; j <= m; ++j) {
    tail[0][j] = 0.0;
    for (std::size_t c = j; c < m; ++c) tail[0][j] += targets.col_totals[c];
  }
  for (const NmSubproblem& sub : subs) tail[sub.cut.i][sub.cut.j] = sub.tail_sum;

  TransformResult result;
  result.table = ContingencyTable(n, m, std::vector<double>(n * m, 0.0));
  result.table.row_labels = source.row_labels;
  result.table.col_labels = source.col_labels;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      double v = tail[r][c] - tail[r + 1][c] - tail[r][c + 1] + tail[r + 1][c + 1];
      if (v < 0.0) {
        if (v >= -1e-9 * total) {
          v = 0.0;  // float noise on an exactly-zero cell
        } else {
          std::ostringstream msg;
          msg << "nm_fit: no nonnegative table preserves the indicator under these targets; "
              << "cell (" << r + 1 << "," << c + 1 << ") reconstructs to " << v
              << " from tail sums T(" << r << "," << c << ") = " << tail[r][c] << ", T("
              << r + 1 << "," << c << ") = " << tail[r + 1][c] << ", T(" << r << "," << c + 1
              << ") = " << tail[r][c + 1] << ", T(" << r + 1 << "," << c + 1 << ") = "
              << tail[r + 1][c + 1];
          throw InfeasibleTargetError(msg.str());
        }
      }
      result.table.at(r, c) = v;
    }
  }

  result.iterations = 1;  // closed form
  result.converged = true;
  {
    MarginTargets achieved = margins(result.table);
    double worst = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      worst = std::max(worst, std::abs(achieved.row_totals[r] - targets.row_totals[r]));
    for (std::size_t c = 0; c < m; ++c)
      worst = std::max(worst, std::abs(achieved.col_totals[c] - targets.col_totals[c]));
    result.margin_residual = worst / total;
  }
  fill_diagnostics(source, result.table, result.preserved);
  return result;
}

TransformResult nm_fit_2x2(const ContingencyTable& source, const MarginTargets& targets) {
  if (source.rows != 2 || source.cols != 2) {
    throw DimensionError("nm_fit_2x2: source must be 2x2");
  }
  return nm_fit(source, targets);
}

}  // namespace tabfit
