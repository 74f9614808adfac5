#include "dtmf/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dtmf/error.hpp"

namespace dtmf {

std::vector<CsvRow> read_csv(std::istream& in) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string cell;
    bool in_quotes = false;
    bool row_started = false;

    auto end_cell = [&] {
        row.push_back(cell);
        cell.clear();
    };
    auto end_row = [&] {
        end_cell();
        rows.push_back(std::move(row));
        row.clear();
        row_started = false;
    };

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    cell.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                cell.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_started = true;
                break;
            case ',':
                end_cell();
                row_started = true;
                break;
            case '\r':
                break;
            case '\n':
                if (row_started || !cell.empty() || !row.empty()) end_row();
                break;
            default:
                cell.push_back(c);
                row_started = true;
        }
    }
    if (in_quotes) fail("BadFormat", "unterminated quote in CSV input");
    if (row_started || !cell.empty() || !row.empty()) end_row();
    return rows;
}

std::vector<CsvRow> read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("BadFile", "cannot open " + path);
    return read_csv(in);
}

void write_csv_row(std::ostream& out, const CsvRow& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        const std::string& cell = row[i];
        if (cell.find_first_of(",\"\n\r") != std::string::npos) {
            out << '"';
            for (char c : cell) {
                if (c == '"') out << '"';
                out << c;
            }
            out << '"';
        } else {
            out << cell;
        }
    }
    out << '\n';
}

std::string format_double(double x) {
    // Shortest representation that round-trips: try increasing precision.
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& cell, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0' || errno == ERANGE)
        fail("BadFormat", "expected a number in " + context + ", got \"" + cell + "\"");
    return v;
}

long long parse_int(const std::string& cell, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(cell.c_str(), &end, 10);
    if (end == cell.c_str() || *end != '\0' || errno == ERANGE)
        fail("BadFormat", "expected an integer in " + context + ", got \"" + cell + "\"");
    return v;
}

}  // namespace dtmf
