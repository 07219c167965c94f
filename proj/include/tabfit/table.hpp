#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "tabfit/errors.hpp"

namespace tabfit {

// Dense row-major table of nonnegative counts or masses, at least 2x2.
// Rows index the first classification (by convention husbands/males), columns
// the second (wives/females). Labels are optional metadata and never enter
// any computation.
//
// Construction only enforces structural consistency (cell count, label
// lengths); value-level invariants (nonnegativity, positive grand total) are
// checked by validate(), so invalid tables can be built, inspected and
// reported on.
struct ContingencyTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cells;            // row-major, rows*cols entries
  std::vector<std::string> row_labels;  // empty, or exactly rows entries
  std::vector<std::string> col_labels;  // empty, or exactly cols entries

  ContingencyTable() = default;
  ContingencyTable(std::size_t n_rows, std::size_t n_cols, std::vector<double> values);
  ContingencyTable(std::initializer_list<std::initializer_list<double>> init);

  double at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }

  double grand_total() const;
  bool same_shape(const ContingencyTable& other) const {
    return rows == other.rows && cols == other.cols;
  }
};

// Target row and column totals for a transform. Valid targets have equal
// grand totals (relative tolerance 1e-9) and nonnegative entries.
struct MarginTargets {
  std::vector<double> row_totals;
  std::vector<double> col_totals;

  double grand_total() const;
};

// A 2x2 aggregation boundary: the first `i` rows and first `j` columns form
// the low block, everything below/right of it the high block. 1-based,
// 1 <= i <= rows-1 and 1 <= j <= cols-1.
struct AggregationCut {
  std::size_t i = 1;
  std::size_t j = 1;
};

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

ValidationReport validate(const ContingencyTable& table);
ValidationReport validate(const MarginTargets& targets);

// Throwing companions for operations whose preconditions require validity.
// `context` names the operation in the error message.
void require_valid(const ContingencyTable& table, const char* context);
void require_valid(const MarginTargets& targets, const char* context);
void require_compatible(const ContingencyTable& table, const MarginTargets& targets,
                        const char* context);

// Row and column sums of the table.
MarginTargets margins(const ContingencyTable& table);

// Collapses the table to 2x2 across the cut: cell (0,0) is the sum over
// rows <= i, cols <= j (1-based), cell (1,1) the sum over rows > i, cols > j,
// off-diagonals analogous. Cell (1,1) is the "H,H" cell of the sorting
// indicator. Grand total is preserved.
ContingencyTable aggregate_2x2(const ContingencyTable& table, const AggregationCut& cut);

enum class RatioOrientation {
  RowOverCol,  // sum of selected row totals / sum of selected column totals
  ColOverRow,  // transposed: numerator set selects columns, denominator set rows
};

// Ratio of a selected row-margin sum to a selected column-margin sum
// (e.g. high-educated men per high-educated women). Indices are 0-based.
double margin_ratios(const ContingencyTable& table,
                     const std::vector<std::size_t>& numerator_rows,
                     const std::vector<std::size_t>& denominator_cols,
                     RatioOrientation orientation = RatioOrientation::RowOverCol);

}  // namespace tabfit
