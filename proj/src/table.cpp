#include "tabfit/table.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace tabfit {

ContingencyTable::ContingencyTable(std::size_t n_rows, std::size_t n_cols,
                                   std::vector<double> values)
    : rows(n_rows), cols(n_cols), cells(std::move(values)) {
  if (cells.size() != rows * cols) {
    std::ostringstream msg;
    msg << "cell count " << cells.size() << " does not match " << rows << "x" << cols;
    throw DimensionError(msg.str());
  }
}

ContingencyTable::ContingencyTable(std::initializer_list<std::initializer_list<double>> init) {
  rows = init.size();
  cols = rows ? init.begin()->size() : 0;
  cells.reserve(rows * cols);
  for (const auto& row : init) {
    if (row.size() != cols) throw DimensionError("ragged initializer rows");
    cells.insert(cells.end(), row.begin(), row.end());
  }
}

double ContingencyTable::grand_total() const {
  return std::accumulate(cells.begin(), cells.end(), 0.0);
}

double MarginTargets::grand_total() const {
  return std::accumulate(row_totals.begin(), row_totals.end(), 0.0);
}

ValidationReport validate(const ContingencyTable& table) {
  ValidationReport report;
  if (table.rows < 2 || table.cols < 2) {
    report.problems.push_back("table must be at least 2x2");
  }
  if (table.cells.size() != table.rows * table.cols) {
    report.problems.push_back("cell storage does not match declared shape");
    return report;  // indexing below would be unsafe
  }
  if (!table.row_labels.empty() && table.row_labels.size() != table.rows) {
    report.problems.push_back("row label count does not match row count");
  }
  if (!table.col_labels.empty() && table.col_labels.size() != table.cols) {
    report.problems.push_back("column label count does not match column count");
  }
  double total = 0.0;
  for (std::size_t r = 0; r < table.rows; ++r) {
    for (std::size_t c = 0; c < table.cols; ++c) {
      double v = table.at(r, c);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "cell (" << r + 1 << "," << c + 1 << ") is not finite";
        report.problems.push_back(msg.str());
      } else if (v < 0.0) {
        std::ostringstream msg;
        msg << "cell (" << r + 1 << "," << c + 1 << ") is negative (" << v << ")";
        report.problems.push_back(msg.str());
      } else {
        total += v;
      }
    }
  }
  if (report.problems.empty() && total <= 0.0) {
    report.problems.push_back("grand total is zero");
  }
  return report;
}

ValidationReport validate(const MarginTargets& targets) {
  ValidationReport report;
  if (targets.row_totals.size() < 2 || targets.col_totals.size() < 2) {
    report.problems.push_back("targets must cover at least 2 rows and 2 columns");
  }
  double row_sum = 0.0, col_sum = 0.0;
  bool entries_ok = true;
  for (double v : targets.row_totals) {
    if (!std::isfinite(v) || v < 0.0) {
      report.problems.push_back("row totals must be finite and nonnegative");
      entries_ok = false;
      break;
    }
    row_sum += v;
  }
  for (double v : targets.col_totals) {
    if (!std::isfinite(v) || v < 0.0) {
      report.problems.push_back("column totals must be finite and nonnegative");
      entries_ok = false;
      break;
    }
    col_sum += v;
  }
  if (entries_ok) {
    double scale = std::max(row_sum, col_sum);
    if (scale <= 0.0) {
      report.problems.push_back("target grand total is zero");
    } else if (std::abs(row_sum - col_sum) > 1e-9 * scale) {
      std::ostringstream msg;
      msg << "row totals sum to " << row_sum << " but column totals sum to " << col_sum;
      report.problems.push_back(msg.str());
    }
  }
  return report;
}

namespace {

[[noreturn]] void throw_report(const ValidationReport& report, const char* context,
                               const char* what) {
  std::ostringstream msg;
  msg << context << ": invalid " << what;
  for (const auto& p : report.problems) msg << "; " << p;
  throw DomainError(msg.str());
}

}  // namespace

void require_valid(const ContingencyTable& table, const char* context) {
  ValidationReport report = validate(table);
  if (!report.ok()) throw_report(report, context, "table");
}

void require_valid(const MarginTargets& targets, const char* context) {
  ValidationReport report = validate(targets);
  if (!report.ok()) throw_report(report, context, "targets");
}

void require_compatible(const ContingencyTable& table, const MarginTargets& targets,
                        const char* context) {
  if (targets.row_totals.size() != table.rows || targets.col_totals.size() != table.cols) {
    std::ostringstream msg;
    msg << context << ": targets are " << targets.row_totals.size() << "x"
        << targets.col_totals.size() << " but the table is " << table.rows << "x" << table.cols;
    throw DimensionError(msg.str());
  }
}

MarginTargets margins(const ContingencyTable& table) {
  require_valid(table, "margins");
  MarginTargets out;
  out.row_totals.assign(table.rows, 0.0);
  out.col_totals.assign(table.cols, 0.0);
  for (std::size_t r = 0; r < table.rows; ++r) {
    for (std::size_t c = 0; c < table.cols; ++c) {
      out.row_totals[r] += table.at(r, c);
      out.col_totals[c] += table.at(r, c);
    }
  }
  return out;
}

ContingencyTable aggregate_2x2(const ContingencyTable& table, const AggregationCut& cut) {
  require_valid(table, "aggregate_2x2");
  if (cut.i < 1 || cut.i > table.rows - 1 || cut.j < 1 || cut.j > table.cols - 1) {
    std::ostringstream msg;
    msg << "aggregate_2x2: cut (" << cut.i << "," << cut.j << ") out of bounds for "
        << table.rows << "x" << table.cols;
    throw DimensionError(msg.str());
  }
  std::vector<double> block(4, 0.0);
  for (std::size_t r = 0; r < table.rows; ++r) {
    for (std::size_t c = 0; c < table.cols; ++c) {
      std::size_t idx = (r >= cut.i ? 2 : 0) + (c >= cut.j ? 1 : 0);
      block[idx] += table.at(r, c);
    }
  }
  return ContingencyTable(2, 2, std::move(block));
}

double margin_ratios(const ContingencyTable& table,
                     const std::vector<std::size_t>& numerator_rows,
                     const std::vector<std::size_t>& denominator_cols,
                     RatioOrientation orientation) {
  MarginTargets m = margins(table);
  if (numerator_rows.empty() || denominator_cols.empty()) {
    throw DomainError("margin_ratios: index sets must be nonempty");
  }
  const std::vector<double>& num_margin =
      orientation == RatioOrientation::RowOverCol ? m.row_totals : m.col_totals;
  const std::vector<double>& den_margin =
      orientation == RatioOrientation::RowOverCol ? m.col_totals : m.row_totals;
  double num = 0.0, den = 0.0;
  for (std::size_t i : numerator_rows) {
    if (i >= num_margin.size()) throw DimensionError("margin_ratios: numerator index out of range");
    num += num_margin[i];
  }
  for (std::size_t j : denominator_cols) {
    if (j >= den_margin.size())
      throw DimensionError("margin_ratios: denominator index out of range");
    den += den_margin[j];
  }
  if (den <= 0.0) throw ZeroCellError("margin_ratios: denominator margin sum is zero");
  return num / den;
}

}  // namespace tabfit
