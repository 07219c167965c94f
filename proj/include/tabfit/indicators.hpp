#pragma once

#include <cstddef>
#include <vector>

#include "tabfit/table.hpp"

namespace tabfit {

// The Liu-Lu sorting indicator of a 2x2 table:
//
//   value = (N_HH - int(R)) / (min(N_H., N_.H) - int(R)),   R = N_H. * N_.H / N
//
// where H is the second row/column (the high category), N_HH the bottom-right
// cell and int() is floor. 0 at independence, 1 at the margin-feasible
// maximum.
struct LLValue {
  double value = 0.0;
  double numerator = 0.0;    // N_HH - int(R)
  double denominator = 0.0;  // min(N_H., N_.H) - int(R)
  double expected_hh = 0.0;  // int(R); integer-valued
};

// Matrix-valued generalization: one LLValue per aggregation cut, indexed by
// cut coordinates. Shape (rows-1) x (cols-1) for a rows x cols source.
struct LLMatrix {
  std::size_t rows = 0;  // source rows - 1
  std::size_t cols = 0;  // source cols - 1
  std::vector<LLValue> values;  // row-major by cut

  // 1-based cut indices, matching AggregationCut.
  const LLValue& at(std::size_t cut_i, std::size_t cut_j) const {
    return values[(cut_i - 1) * cols + (cut_j - 1)];
  }
  LLValue& at(std::size_t cut_i, std::size_t cut_j) {
    return values[(cut_i - 1) * cols + (cut_j - 1)];
  }
};

// Cross-product ratio (c11*c22)/(c12*c21) of a 2x2 all-positive table.
double odds_ratio(const ContingencyTable& table);

// floor(high-row total * high-col total / grand total) for 2x2 targets: the
// independence-implied integer floor of the H,H cell.
double expected_hh(const MarginTargets& targets);

LLValue liu_lu(const ContingencyTable& table);

// liu_lu of aggregate_2x2(table, cut) for every cut. Errors from a single cut
// are annotated with the failing cut and propagated.
LLMatrix liu_lu_generalized(const ContingencyTable& table);

// Directed divergence sum_ij p_ij * ln(p_ij / q_ij), with 0*ln(0) = 0.
// Inputs must be distributions summing to 1 (relative 1e-9) unless
// `normalize` is set, in which case both are scaled internally.
// Requires q > 0 wherever p > 0.
double kl_divergence(const ContingencyTable& p, const ContingencyTable& q,
                     bool normalize = false);

}  // namespace tabfit
