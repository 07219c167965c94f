#include "tabfit/csv.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace tabfit {

namespace {

// Splits one CSV line on commas, honoring double-quoted fields with ""
// escapes. Whitespace around unquoted fields is trimmed.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool was_quoted = false;
  std::size_t col = 1;
  for (std::size_t k = 0; k <= line.size(); ++k) {
    bool end = k == line.size();
    char ch = end ? ',' : line[k];
    if (in_quotes) {
      if (end) throw ParseError("unterminated quoted field", line_no, col);
      if (ch == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          field += '"';
          ++k;
        } else {
          in_quotes = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (!end && ch == '"' && field.empty()) {
      in_quotes = true;
      was_quoted = true;
      continue;
    }
    if (ch == ',') {
      if (!was_quoted) {
        std::size_t b = field.find_first_not_of(" \t\r");
        std::size_t e = field.find_last_not_of(" \t\r");
        field = b == std::string::npos ? "" : field.substr(b, e - b + 1);
      }
      fields.push_back(field);
      field.clear();
      was_quoted = false;
      col = k + 2;
      continue;
    }
    field += ch;
  }
  return fields;
}

bool parse_number(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + text.size();
}

}  // namespace

ContingencyTable read_table_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;  // blank
    rows.push_back(split_csv_line(line, line_no));
  }
  if (rows.empty()) throw ParseError("empty input", 1, 1);
  std::size_t width = rows.front().size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      std::ostringstream msg;
      msg << "row has " << rows[r].size() << " fields, expected " << width;
      throw ParseError(msg.str(), r + 1, 1);
    }
  }

  double probe;
  bool labeled = !parse_number(rows[0][0], probe);
  std::size_t first_row = labeled ? 1 : 0;
  std::size_t first_col = labeled ? 1 : 0;
  if (rows.size() <= first_row || width <= first_col) {
    throw ParseError("no data cells", 1, 1);
  }

  ContingencyTable table;
  table.rows = rows.size() - first_row;
  table.cols = width - first_col;
  table.cells.reserve(table.rows * table.cols);
  if (labeled) {
    table.col_labels.assign(rows[0].begin() + 1, rows[0].end());
    for (std::size_t r = first_row; r < rows.size(); ++r) {
      table.row_labels.push_back(rows[r][0]);
    }
  }
  for (std::size_t r = first_row; r < rows.size(); ++r) {
    for (std::size_t c = first_col; c < width; ++c) {
      double value;
      if (!parse_number(rows[r][c], value)) {
        std::ostringstream msg;
        msg << "expected a number, got \"" << rows[r][c] << "\"";
        throw ParseError(msg.str(), r + 1, c + 1);
      }
      table.cells.push_back(value);
    }
  }
  return table;
}

ContingencyTable read_table_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return read_table_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line, e.column);
  }
}

namespace {

std::string format_cell(double value, int significant_digits, bool round_to_int) {
  std::ostringstream out;
  if (round_to_int) {
    out << std::llround(value);
  } else {
    out << std::setprecision(significant_digits) << value;
  }
  return out.str();
}

std::string quote_if_needed(const std::string& label) {
  if (label.find_first_of(",\"\n") == std::string::npos) return label;
  std::string out = "\"";
  for (char ch : label) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

void write_table_csv(std::ostream& out, const ContingencyTable& table, int significant_digits,
                     bool round_to_int) {
  bool labeled = !table.row_labels.empty() || !table.col_labels.empty();
  if (labeled) {
    // corner field stays empty so the non-numeric detection rule re-parses it
    for (std::size_t c = 0; c < table.cols; ++c) {
      out << ',' << quote_if_needed(c < table.col_labels.size() ? table.col_labels[c]
                                                                : "col" + std::to_string(c + 1));
    }
    out << '\n';
  }
  for (std::size_t r = 0; r < table.rows; ++r) {
    if (labeled) {
      out << quote_if_needed(r < table.row_labels.size() ? table.row_labels[r]
                                                         : "row" + std::to_string(r + 1))
          << ',';
    }
    for (std::size_t c = 0; c < table.cols; ++c) {
      if (c) out << ',';
      out << format_cell(table.at(r, c), significant_digits, round_to_int);
    }
    out << '\n';
  }
}

std::string table_to_csv(const ContingencyTable& table, int significant_digits,
                         bool round_to_int) {
  std::ostringstream out;
  write_table_csv(out, table, significant_digits, round_to_int);
  return out.str();
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::vector<std::string> fields = split_csv_line(text, 1);
  for (std::size_t k = 0; k < fields.size(); ++k) {
    double value;
    if (!parse_number(fields[k], value)) {
      throw ParseError("expected a number, got \"" + fields[k] + "\"", 1, k + 1);
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace tabfit
