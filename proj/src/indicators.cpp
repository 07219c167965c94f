#include "tabfit/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tabfit {

double odds_ratio(const ContingencyTable& table) {
  require_valid(table, "odds_ratio");
  if (table.rows != 2 || table.cols != 2) {
    throw DimensionError("odds_ratio: table must be 2x2");
  }
  for (std::size_t k = 0; k < 4; ++k) {
    if (table.cells[k] <= 0.0) {
      std::ostringstream msg;
      msg << "odds_ratio: cell (" << k / 2 + 1 << "," << k % 2 + 1 << ") is zero";
      throw ZeroCellError(msg.str());
    }
  }
  return (table.at(0, 0) * table.at(1, 1)) / (table.at(0, 1) * table.at(1, 0));
}

double expected_hh(const MarginTargets& targets) {
  require_valid(targets, "expected_hh");
  if (targets.row_totals.size() != 2 || targets.col_totals.size() != 2) {
    throw DimensionError("expected_hh: targets must be 2x2");
  }
  double n = targets.grand_total();
  if (n <= 0.0) throw DomainError("expected_hh: grand total must be positive");
  return std::floor(targets.row_totals[1] * targets.col_totals[1] / n);
}

LLValue liu_lu(const ContingencyTable& table) {
  require_valid(table, "liu_lu");
  if (table.rows != 2 || table.cols != 2) {
    throw DimensionError("liu_lu: table must be 2x2");
  }
  MarginTargets m = margins(table);
  double n = table.grand_total();
  double row_h = m.row_totals[1];
  double col_h = m.col_totals[1];
  double int_r = std::floor(row_h * col_h / n);
  double hh = table.at(1, 1);

  LLValue out;
  out.expected_hh = int_r;
  out.denominator = std::min(row_h, col_h) - int_r;
  out.numerator = hh - int_r;
  if (out.denominator <= 0.0) {
    std::ostringstream msg;
    msg << "liu_lu: min margin " << std::min(row_h, col_h) << " does not exceed int(R) = "
        << int_r;
    throw DegenerateMarginError(msg.str());
  }
  // Absorb float noise when the H,H cell sits exactly at the independence
  // floor; genuinely negative association still errors.
  if (out.numerator < 0.0) {
    if (out.numerator >= -1e-9 * n) {
      out.numerator = 0.0;
    } else {
      std::ostringstream msg;
      msg << "liu_lu: H,H cell " << hh << " is below its independence floor int(R) = " << int_r
          << " (negative association)";
      throw NegativeAssociationError(msg.str());
    }
  }
  out.value = out.numerator / out.denominator;
  return out;
}

LLMatrix liu_lu_generalized(const ContingencyTable& table) {
  require_valid(table, "liu_lu_generalized");
  LLMatrix out;
  out.rows = table.rows - 1;
  out.cols = table.cols - 1;
  out.values.resize(out.rows * out.cols);
  for (std::size_t i = 1; i <= out.rows; ++i) {
    for (std::size_t j = 1; j <= out.cols; ++j) {
      try {
        out.at(i, j) = liu_lu(aggregate_2x2(table, {i, j}));
      } catch (const Error& e) {
        std::ostringstream msg;
        msg << "cut (" << i << "," << j << "): " << e.what();
        if (dynamic_cast<const NegativeAssociationError*>(&e)) {
          throw NegativeAssociationError(msg.str());
        }
        if (dynamic_cast<const DegenerateMarginError*>(&e)) {
          throw DegenerateMarginError(msg.str());
        }
        throw Error(msg.str());
      }
    }
  }
  return out;
}

double kl_divergence(const ContingencyTable& p, const ContingencyTable& q, bool normalize) {
  require_valid(p, "kl_divergence");
  require_valid(q, "kl_divergence");
  if (!p.same_shape(q)) {
    throw DimensionError("kl_divergence: tables must have the same shape");
  }
  double p_total = p.grand_total();
  double q_total = q.grand_total();
  if (!normalize) {
    if (std::abs(p_total - 1.0) > 1e-9 || std::abs(q_total - 1.0) > 1e-9) {
      throw DomainError(
          "kl_divergence: inputs must sum to 1 (pass normalize to scale internally)");
    }
    p_total = q_total = 1.0;
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < p.cells.size(); ++k) {
    double pv = p.cells[k] / p_total;
    double qv = q.cells[k] / q_total;
    if (pv == 0.0) continue;  // 0 * ln(0) term
    if (qv <= 0.0) {
      std::ostringstream msg;
      msg << "kl_divergence: support violation at cell " << k / p.cols + 1 << ","
          << k % p.cols + 1 << " (p > 0 where q = 0)";
      throw ZeroCellError(msg.str());
    }
    sum += pv * std::log(pv / qv);
  }
  return sum;
}

}  // namespace tabfit
