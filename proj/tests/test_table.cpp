#include "doctest.h"
#include "tabfit/table.hpp"

using namespace tabfit;

TEST_SUITE("table") {

TEST_CASE("validate accepts a plain counts table") {
  ContingencyTable t{{500, 500}, {100, 900}};
  CHECK(validate(t).ok());
}

TEST_CASE("validate flags an all-zero table") {
  ContingencyTable t{{0, 0}, {0, 0}};
  ValidationReport report = validate(t);
  REQUIRE_FALSE(report.ok());
  CHECK(report.problems[0] == "grand total is zero");
}

TEST_CASE("validate flags a negative cell") {
  ContingencyTable t{{1, -1}, {2, 3}};
  ValidationReport report = validate(t);
  REQUIRE_FALSE(report.ok());
  CHECK(report.problems[0].find("negative") != std::string::npos);
}

TEST_CASE("validate flags 1xN shapes") {
  ContingencyTable t(2, 2, {1, 2, 3, 4});
  t.rows = 1;
  t.cols = 4;
  CHECK_FALSE(validate(t).ok());
}

TEST_CASE("constructor rejects mismatched cell counts") {
  CHECK_THROWS_AS(ContingencyTable(2, 2, {1.0, 2.0, 3.0}), DimensionError);
}

TEST_CASE("margins of the period-1 couples table") {
  ContingencyTable t{{500, 700}, {100, 700}};
  MarginTargets m = margins(t);
  CHECK(m.row_totals == std::vector<double>{1200, 800});
  CHECK(m.col_totals == std::vector<double>{600, 1400});
  CHECK(m.grand_total() == 2000);
}

TEST_CASE("margins of an identity-like table") {
  ContingencyTable t{{1, 0}, {0, 1}};
  MarginTargets m = margins(t);
  CHECK(m.row_totals == std::vector<double>{1, 1});
  CHECK(m.col_totals == std::vector<double>{1, 1});
}

TEST_CASE("margins by direct summation") {
  ContingencyTable t{{2, 2}, {1, 5}};
  MarginTargets m = margins(t);
  CHECK(m.row_totals == std::vector<double>{4, 6});
  CHECK(m.col_totals == std::vector<double>{3, 7});
}

TEST_CASE("margin vectors sum to the grand total") {
  ContingencyTable t{{3, 1, 4}, {1, 5, 9}, {2, 6, 5}};
  MarginTargets m = margins(t);
  double row_sum = 0, col_sum = 0;
  for (double v : m.row_totals) row_sum += v;
  for (double v : m.col_totals) col_sum += v;
  CHECK(row_sum == doctest::Approx(t.grand_total()).epsilon(1e-12));
  CHECK(col_sum == doctest::Approx(t.grand_total()).epsilon(1e-12));
}

TEST_CASE("aggregate_2x2 of a 2x2 is the identity") {
  ContingencyTable t{{2, 2}, {1, 5}};
  ContingencyTable a = aggregate_2x2(t, {1, 1});
  CHECK(a.cells == t.cells);
}

TEST_CASE("aggregate_2x2 on 3x3 all-ones") {
  ContingencyTable ones{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
  ContingencyTable low = aggregate_2x2(ones, {1, 1});
  CHECK(low.cells == std::vector<double>{1, 2, 2, 4});
  ContingencyTable high = aggregate_2x2(ones, {2, 2});
  CHECK(high.cells == std::vector<double>{4, 2, 2, 1});
}

TEST_CASE("aggregate_2x2 preserves the grand total at every cut") {
  ContingencyTable t{{3, 1, 4}, {1, 5, 9}, {2, 6, 5}};
  for (std::size_t i = 1; i <= 2; ++i) {
    for (std::size_t j = 1; j <= 2; ++j) {
      CHECK(aggregate_2x2(t, {i, j}).grand_total() ==
            doctest::Approx(t.grand_total()).epsilon(1e-12));
    }
  }
}

TEST_CASE("aggregate_2x2 margins match cut-partitioned margins") {
  ContingencyTable t{{3, 1, 4}, {1, 5, 9}, {2, 6, 5}};
  MarginTargets m = margins(t);
  for (std::size_t i = 1; i <= 2; ++i) {
    for (std::size_t j = 1; j <= 2; ++j) {
      MarginTargets am = margins(aggregate_2x2(t, {i, j}));
      double low_rows = 0;
      for (std::size_t r = 0; r < i; ++r) low_rows += m.row_totals[r];
      double low_cols = 0;
      for (std::size_t c = 0; c < j; ++c) low_cols += m.col_totals[c];
      CHECK(am.row_totals[0] == doctest::Approx(low_rows).epsilon(1e-12));
      CHECK(am.col_totals[0] == doctest::Approx(low_cols).epsilon(1e-12));
    }
  }
}

TEST_CASE("aggregate_2x2 rejects out-of-bounds cuts") {
  ContingencyTable t{{2, 2}, {1, 5}};
  CHECK_THROWS_AS(aggregate_2x2(t, {2, 1}), DimensionError);
  CHECK_THROWS_AS(aggregate_2x2(t, {0, 1}), DimensionError);
}

TEST_CASE("margin_ratios on the period-1 couples table") {
  ContingencyTable t{{500, 700}, {100, 700}};
  CHECK(margin_ratios(t, {1}, {0}) == doctest::Approx(800.0 / 600.0).epsilon(1e-12));
}

TEST_CASE("margin_ratios is 1 on a symmetric table's matching category") {
  ContingencyTable t{{4, 2}, {2, 7}};
  CHECK(margin_ratios(t, {0}, {0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("margin_ratios over all rows and columns is 1") {
  ContingencyTable t{{3, 1, 4}, {1, 5, 9}, {2, 6, 5}};
  CHECK(margin_ratios(t, {0, 1, 2}, {0, 1, 2}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("margin_ratios transposed orientation flips the margins") {
  ContingencyTable t{{500, 700}, {100, 700}};
  CHECK(margin_ratios(t, {1}, {0}, RatioOrientation::ColOverRow) ==
        doctest::Approx(1400.0 / 1200.0).epsilon(1e-12));
}

TEST_CASE("margin_ratios rejects empty sets and zero denominators") {
  ContingencyTable t{{1, 1}, {1, 1}};
  CHECK_THROWS_AS(margin_ratios(t, {}, {0}), DomainError);
  ContingencyTable z{{1, 0}, {1, 0}};
  CHECK_THROWS_AS(margin_ratios(z, {0}, {1}), ZeroCellError);
}

TEST_CASE("targets validation checks total consistency") {
  MarginTargets good{{1200, 800}, {600, 1400}};
  CHECK(validate(good).ok());
  MarginTargets bad{{1200, 800}, {600, 1300}};
  CHECK_FALSE(validate(bad).ok());
  MarginTargets negative{{-1, 801}, {400, 400}};
  CHECK_FALSE(validate(negative).ok());
}

}  // TEST_SUITE
