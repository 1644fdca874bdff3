#pragma once

#include <string>
#include <string_view>
#include <vector>

// Read-only access to the files under data/ and golden/, compiled into the
// binary so the tools run from any directory.
namespace solar::data {

/// Contents of an embedded file addressed by its path relative to data/
/// (e.g. "demand/solar2.csv") or "golden/<name>"; throws std::out_of_range.
std::string_view file(std::string_view name);
bool has_file(std::string_view name);
std::vector<std::string> file_names();

/// Numeric rows of a CSV; lines starting with '#' and rows that do not
/// begin with a number (headers) are skipped.
std::vector<std::vector<double>> parse_csv(std::string_view text);

std::string sha256_hex(std::string_view bytes);

/// SHA-256 over every data/ file (not golden/) in name order, each entry
/// contributing "name\n" followed by its bytes.
std::string checksum();

}  // namespace solar::data
