#pragma once

// Plain CSV output: UTF-8, LF line endings, '.' decimal separator, 17
// significant digits so that values round-trip.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace nlscrit::csv {

std::string format_number(double x);

/// Columns of equal length under a header row.
void write_columns(std::ostream& os, const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& columns);

/// Writes to a temporary sibling and renames it into place.
void write_file(const std::filesystem::path& path, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& columns);

}  // namespace nlscrit::csv
