#include "csv.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>

namespace netfair::detail {

std::vector<std::string> split_csv_line(const std::string& line, const std::string& context) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i <= n) {
        if (i == n) {
            if (quoted) throw IngestError(context + ": unterminated quote");
            fields.push_back(current);
            break;
        }
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < n && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && current.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
        ++i;
    }
    return fields;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::vector<std::string> split_list_field(const std::string& field) {
    std::vector<std::string> items;
    std::string current;
    for (char c : field) {
        if (c == ';') {
            if (!current.empty()) items.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) items.push_back(current);
    return items;
}

std::string join_list_field(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out.push_back(';');
        out += items[i];
    }
    return out;
}

std::size_t CsvTable::require_column(const std::string& name) const {
    auto it = columns.find(name);
    if (it == columns.end())
        throw IngestError(source + ": missing required column '" + name + "'");
    return it->second;
}

void CsvTable::fail(std::size_t row, const std::string& what) const {
    throw IngestError(source + " row " + std::to_string(line_numbers[row]) + ": " + what);
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path.string());

    CsvTable table;
    table.source = path.filename().string();
    std::string line;
    std::size_t line_number = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto fields = split_csv_line(line, table.source + " line " + std::to_string(line_number));
        if (!have_header) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (!table.columns.emplace(fields[i], i).second)
                    throw IngestError(table.source + ": duplicate column '" + fields[i] + "'");
                table.column_order.push_back(fields[i]);
            }
            have_header = true;
            continue;
        }
        if (fields.size() != table.column_order.size())
            throw IngestError(table.source + " row " + std::to_string(line_number) + ": expected " +
                              std::to_string(table.column_order.size()) + " fields, got " +
                              std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_number);
    }
    if (!have_header) throw IngestError(path.string() + ": missing header row");
    return table;
}

long long parse_int(const CsvTable& table, std::size_t row, std::size_t col) {
    const std::string& s = table.cell(row, col);
    errno = 0;
    char* end = nullptr;
    const long long value = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        table.fail(row, "'" + s + "' is not an integer");
    return value;
}

double parse_double(const CsvTable& table, std::size_t row, std::size_t col) {
    const std::string& s = table.cell(row, col);
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        table.fail(row, "'" + s + "' is not a number");
    return value;
}

bool parse_bool(const CsvTable& table, std::size_t row, std::size_t col) {
    const std::string& s = table.cell(row, col);
    if (s == "1" || s == "true" || s == "True") return true;
    if (s == "0" || s == "false" || s == "False") return false;
    table.fail(row, "'" + s + "' is not a boolean (use 0/1 or true/false)");
}

}  // namespace netfair::detail
