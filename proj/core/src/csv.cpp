#include "bookrank/csv.hpp"

#include "bookrank/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bookrank {

std::string csv_escape(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string line;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_escape(fields[i]);
    }
    return line;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line, size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            if (!cur.empty()) {
                throw ParseError("line " + std::to_string(line_no) + ": stray quote inside unquoted field");
            }
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) {
        throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted field");
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace

CsvFile read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open CSV file: " + path.string());
    }
    CsvFile out;
    std::string line;
    size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!header_seen && !line.empty() && line[0] == '#') {
            std::string c = line.substr(1);
            if (!c.empty() && c[0] == ' ') c.erase(0, 1);
            out.comments.push_back(std::move(c));
            continue;
        }
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) {
            continue;
        }
        auto fields = split_csv_line(line, line_no);
        if (!header_seen) {
            out.header = std::move(fields);
            header_seen = true;
        } else {
            if (fields.size() != out.header.size()) {
                throw ParseError("line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(out.header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
            }
            out.rows.push_back(std::move(fields));
        }
    }
    return out;
}

void write_csv(const std::filesystem::path& path, const CsvFile& file) {
    std::ofstream out(path, std::ios::binary); // binary: stable newlines for goldens
    if (!out) {
        throw ConfigError("cannot open CSV file for writing: " + path.string());
    }
    for (const auto& c : file.comments) {
        out << "# " << c << '\n';
    }
    out << csv_join(file.header) << '\n';
    for (const auto& row : file.rows) {
        out << csv_join(row) << '\n';
    }
}

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_fixed1(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& context) {
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ParseError(context + ": not a number: '" + s + "'");
    }
    return v;
}

long long parse_int(const std::string& s, const std::string& context) {
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ParseError(context + ": not an integer: '" + s + "'");
    }
    return v;
}

} // namespace bookrank
