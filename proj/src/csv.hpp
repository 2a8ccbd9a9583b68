// Minimal CSV support for the interchange tables: header row, comma
// delimiter, double-quote quoting for fields that need it. Internal to the
// library; the public surface works in records.
#ifndef NETFAIR_SRC_CSV_HPP
#define NETFAIR_SRC_CSV_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "netfair/ingest.hpp"

namespace netfair::detail {

std::vector<std::string> split_csv_line(const std::string& line, const std::string& context);

std::string csv_escape(const std::string& field);

std::vector<std::string> split_list_field(const std::string& field);

std::string join_list_field(const std::vector<std::string>& items);

// Rows of a CSV file plus a name->column map from the header. Skips '#'
// comment lines and blank lines; remembers source line numbers for errors.
struct CsvTable {
    std::map<std::string, std::size_t> columns;
    std::vector<std::string> column_order;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
    std::string source;

    std::size_t require_column(const std::string& name) const;
    const std::string& cell(std::size_t row, std::size_t col) const { return rows[row][col]; }
    [[noreturn]] void fail(std::size_t row, const std::string& what) const;
};

CsvTable read_csv(const std::filesystem::path& path);

long long parse_int(const CsvTable& table, std::size_t row, std::size_t col);
double parse_double(const CsvTable& table, std::size_t row, std::size_t col);
bool parse_bool(const CsvTable& table, std::size_t row, std::size_t col);

}  // namespace netfair::detail

#endif
