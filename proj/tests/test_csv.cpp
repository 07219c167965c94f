#include <sstream>

#include "doctest.h"
#include "tabfit/csv.hpp"

using namespace tabfit;

TEST_SUITE("csv") {

TEST_CASE("plain numeric grid") {
  std::istringstream in("500,500\n100,900\n");
  ContingencyTable t = read_table_csv(in);
  CHECK(t.rows == 2);
  CHECK(t.cols == 2);
  CHECK(t.cells == std::vector<double>{500, 500, 100, 900});
  CHECK(t.row_labels.empty());
  CHECK(t.col_labels.empty());
}

TEST_CASE("labeled grid with an empty corner") {
  std::istringstream in(",low,high\nlow,500,500\nhigh,100,900\n");
  ContingencyTable t = read_table_csv(in);
  CHECK(t.rows == 2);
  CHECK(t.cols == 2);
  CHECK(t.row_labels == std::vector<std::string>{"low", "high"});
  CHECK(t.col_labels == std::vector<std::string>{"low", "high"});
  CHECK(t.at(1, 1) == 900.0);
}

TEST_CASE("corner text also marks a labeled grid") {
  std::istringstream in("husband,low,high\nlow,1,2\nhigh,3,4\n");
  ContingencyTable t = read_table_csv(in);
  CHECK(t.col_labels == std::vector<std::string>{"low", "high"});
  CHECK(t.cells == std::vector<double>{1, 2, 3, 4});
}

TEST_CASE("blank lines, surrounding spaces and CRLF endings are tolerated") {
  std::istringstream in("\n 500 ,\t500\r\n\n100,900\r\n\n");
  ContingencyTable t = read_table_csv(in);
  CHECK(t.cells == std::vector<double>{500, 500, 100, 900});
}

TEST_CASE("quoted labels keep commas and escaped quotes") {
  std::istringstream in(",\"low, ish\",\"say \"\"hi\"\"\"\na,1,2\nb,3,4\n");
  ContingencyTable t = read_table_csv(in);
  CHECK(t.col_labels == std::vector<std::string>{"low, ish", "say \"hi\""});
}

TEST_CASE("scientific notation and decimals parse") {
  std::istringstream in("1.5e2,2.25\n0.5,1e-3\n");
  ContingencyTable t = read_table_csv(in);
  CHECK(t.at(0, 0) == 150.0);
  CHECK(t.at(1, 1) == 1e-3);
}

TEST_CASE("ragged rows are a parse error with the line number") {
  std::istringstream in("1,2\n3,4,5\n");
  try {
    read_table_csv(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("expected 2") != std::string::npos);
  }
}

TEST_CASE("a non-numeric data cell names its position") {
  std::istringstream in("1,2\n3,oops\n");
  try {
    read_table_csv(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 2);
    CHECK(std::string(e.what()).find("oops") != std::string::npos);
  }
}

TEST_CASE("empty input and unterminated quotes are parse errors") {
  std::istringstream empty("\n  \n");
  CHECK_THROWS_AS(read_table_csv(empty), ParseError);
  std::istringstream bad("\"unclosed,1\n2,3\n");
  CHECK_THROWS_AS(read_table_csv(bad), ParseError);
}

TEST_CASE("a label-only file has no data cells") {
  std::istringstream in("x\ny\n");
  CHECK_THROWS_AS(read_table_csv(in), ParseError);
}

TEST_CASE("missing file errors mention the path") {
  try {
    read_table_csv_file("/nonexistent/nope.csv");
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("nope.csv") != std::string::npos);
  }
}

TEST_CASE("write and read round-trip without labels") {
  ContingencyTable t{{1.5, 2.25}, {3.125, 900}};
  std::string text = table_to_csv(t);
  std::istringstream in(text);
  ContingencyTable back = read_table_csv(in);
  CHECK(back.cells == t.cells);
}

TEST_CASE("write and read round-trip with labels") {
  ContingencyTable t{{1, 2}, {3, 4}};
  t.row_labels = {"low, ish", "high"};
  t.col_labels = {"a\"b", "c"};
  std::string text = table_to_csv(t);
  std::istringstream in(text);
  ContingencyTable back = read_table_csv(in);
  CHECK(back.cells == t.cells);
  CHECK(back.row_labels == t.row_labels);
  CHECK(back.col_labels == t.col_labels);
}

TEST_CASE("labeled output starts with an empty corner field") {
  ContingencyTable t{{1, 2}, {3, 4}};
  t.row_labels = {"r1", "r2"};
  t.col_labels = {"c1", "c2"};
  std::string text = table_to_csv(t);
  CHECK(text.substr(0, 1) == ",");
  CHECK(text == ",c1,c2\nr1,1,2\nr2,3,4\n");
}

TEST_CASE("rounded output prints integers") {
  ContingencyTable t{{534.46457824, 665.53542176}, {65.53542176, 734.46457824}};
  std::string text = table_to_csv(t, 12, true);
  CHECK(text == "534,666\n66,734\n");
}

TEST_CASE("significant digits control the precision") {
  ContingencyTable t{{1.0 / 3.0, 2}, {3, 4}};
  std::string five = table_to_csv(t, 5);
  CHECK(five.find("0.33333,2") == 0);
  std::string twelve = table_to_csv(t, 12);
  CHECK(twelve.find("0.333333333333,2") == 0);
}

TEST_CASE("partial labels are padded with generated names") {
  ContingencyTable t{{1, 2}, {3, 4}};
  t.row_labels = {"only"};
  std::string text = table_to_csv(t);
  CHECK(text.find("row2") != std::string::npos);
  CHECK(text.find("col1") != std::string::npos);
}

TEST_CASE("number lists parse and reject junk") {
  std::vector<double> values = parse_number_list("600, 1400");
  CHECK(values == std::vector<double>{600, 1400});
  CHECK(parse_number_list("1").size() == 1);
  CHECK_THROWS_AS(parse_number_list("600, x"), ParseError);
}

}  // TEST_SUITE
