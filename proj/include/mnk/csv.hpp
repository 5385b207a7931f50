// Small RFC-4180-style CSV reader/writer and the deterministic number
// formatting shared by every emitted file.
#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mnk/regression.hpp"  // DataError

namespace mnk {

// Shortest decimal string that parses back to exactly the same double;
// integral values print without an exponent or decimal point.
inline std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (value == std::floor(value) && std::abs(value) < 1e15)
        return std::to_string(static_cast<long long>(value));
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    for (int precision = 1; precision < 17; ++precision) {
        char candidate[64];
        std::snprintf(candidate, sizeof candidate, "%.*g", precision, value);
        if (std::strtod(candidate, nullptr) == value) {
            std::memcpy(buffer, candidate, sizeof candidate);
            break;
        }
    }
    return buffer;
}

inline double parse_double(const std::string& field, const std::string& context) {
    const char* begin = field.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw DataError("non-numeric value '" + field + "' in " + context);
    return value;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::size_t> column_index(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        return std::nullopt;
    }

    std::size_t require_column(const std::string& name) const {
        if (auto index = column_index(name)) return *index;
        throw DataError("missing required CSV column: " + name);
    }
};

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string escaped = "\"";
    for (char c : field) {
        if (c == '"') escaped += '"';
        escaped += c;
    }
    escaped += '"';
    return escaped;
}

inline std::string csv_to_string(const CsvTable& table) {
    std::string out;
    auto append_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ',';
            out += csv_escape(row[i]);
        }
        out += '\n';
    };
    append_row(table.header);
    for (const std::vector<std::string>& row : table.rows) append_row(row);
    return out;
}

// Parses quoted fields (embedded commas, newlines, doubled quotes) and both
// LF and CRLF line endings. The first record is the header.
inline CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool record_started = false;
    int line = 1;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        if (table.header.empty())
            table.header = record;
        else
            table.rows.push_back(record);
        record.clear();
        record_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                record_started = true;
                break;
            case ',':
                end_field();
                record_started = true;
                break;
            case '\r':
                break;  // swallowed; the '\n' ends the record
            case '\n':
                if (record_started || !field.empty() || !record.empty()) end_record();
                ++line;
                break;
            default:
                field += c;
                record_started = true;
                break;
        }
    }
    if (quoted)
        throw DataError("unterminated quoted CSV field (opened before line " +
                        std::to_string(line) + ")");
    if (record_started || !field.empty() || !record.empty()) end_record();
    if (table.header.empty()) throw DataError("CSV input has no header row");

    for (std::size_t r = 0; r < table.rows.size(); ++r)
        if (table.rows[r].size() != table.header.size())
            throw DataError("CSV row " + std::to_string(r + 2) + " has " +
                            std::to_string(table.rows[r].size()) +
                            " fields, header has " +
                            std::to_string(table.header.size()));
    return table;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
    if (!out) throw DataError("write failed: " + path);
}

inline CsvTable load_csv(const std::string& path) {
    return parse_csv(read_text_file(path));
}

inline void save_csv(const std::string& path, const CsvTable& table) {
    write_text_file(path, csv_to_string(table));
}

}  // namespace mnk
