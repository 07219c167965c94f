#pragma once

#include <iosfwd>
#include <string>

#include "tabfit/table.hpp"

namespace tabfit {

// CSV table format: comma-delimited, UTF-8, optional double-quoted fields.
// If the top-left field is non-numeric (or empty), the first row is read as
// column labels and the first column as row labels; otherwise the whole file
// is data. Values must parse as decimals; structural validity beyond that is
// the caller's concern (validate()).
ContingencyTable read_table_csv(std::istream& in);
ContingencyTable read_table_csv_file(const std::string& path);

// Writes with labels when present (empty corner field, so the file re-parses
// under the detection rule). significant_digits controls numeric precision;
// round_to_int prints nearest integers instead.
void write_table_csv(std::ostream& out, const ContingencyTable& table,
                     int significant_digits = 12, bool round_to_int = false);
std::string table_to_csv(const ContingencyTable& table, int significant_digits = 12,
                         bool round_to_int = false);

// Comma-separated list of nonnegative decimals, e.g. "1200,800".
std::vector<double> parse_number_list(const std::string& text);

}  // namespace tabfit
