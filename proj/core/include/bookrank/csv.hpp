#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bookrank {

/// Minimal RFC-4180 style CSV support: quoting for commas/quotes/newlines,
/// leading '#' lines treated as file comments (used for provenance).
struct CsvFile {
    std::vector<std::string> comments; // '#' lines before the header, markers stripped
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_escape(std::string_view field);
std::string csv_join(const std::vector<std::string>& fields);

CsvFile read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvFile& file);

/// Shortest round-trip decimal rendering of a double (via std::to_chars).
std::string fmt_double(double v);

/// Fixed one-decimal rendering, e.g. -25.0 (used by narrative percent slots).
std::string fmt_fixed1(double v);

double parse_double(const std::string& s, const std::string& context);
long long parse_int(const std::string& s, const std::string& context);

} // namespace bookrank
