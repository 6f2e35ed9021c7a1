#pragma once

#include <map>
#include <string>
#include <vector>

namespace xxz::csv {

// Minimal CSV with '#'-prefixed metadata comments ahead of the header row.
// Cells are kept as preformatted strings so that writes are byte-stable.
struct Table {
    std::vector<std::string> comments;  // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const;  // -1 when absent
    double value(std::size_t row, int col) const;
    // "key=value" pairs scattered over the comment lines
    std::map<std::string, std::string> comment_metadata() const;
};

std::string format_double(double v);  // %.12g

// Atomic write: temporary file in the same directory, then rename.
void write_file(const std::string& path, const Table& table);
std::string to_string(const Table& table);

Table read_file(const std::string& path);
Table parse(const std::string& text);

}  // namespace xxz::csv
