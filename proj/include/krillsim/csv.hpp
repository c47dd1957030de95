#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace krillsim::csv {

/// Shortest decimal that parses back to exactly `value`.
std::string format_number(double value);

/// Parses a full-field double; throws ParseError tagged with source and line.
double parse_number(std::string_view field, const std::string& source, std::size_t line);

std::vector<std::string> split_fields(std::string_view line);

/// Numeric table: one header line then rows of equal width.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> lines;  // source line of each row

    /// Column position by name, or -1.
    int column(std::string_view name) const;
};

/// Blank lines are skipped. Every row must have header.size() numeric fields.
Table read_table(std::istream& in, const std::string& source);

void write_row(std::ostream& out, const std::vector<double>& values);

}  // namespace krillsim::csv
