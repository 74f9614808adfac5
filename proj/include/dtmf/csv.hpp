#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dtmf {

using CsvRow = std::vector<std::string>;

// RFC-4180 style parsing: cells may be quoted, quotes are doubled inside
// quoted cells, and quoted cells may span lines. Unquoted whitespace is kept.
std::vector<CsvRow> read_csv(std::istream& in);
std::vector<CsvRow> read_csv_file(const std::string& path);

// Quotes a cell only when it contains a comma, quote, or newline.
void write_csv_row(std::ostream& out, const CsvRow& row);

// Shortest round-trip decimal form (up to 17 significant digits).
std::string format_double(double x);

// Strict numeric parsers; fail("BadFormat", ...) on junk.
double parse_double(const std::string& cell, const std::string& context);
long long parse_int(const std::string& cell, const std::string& context);

}  // namespace dtmf
