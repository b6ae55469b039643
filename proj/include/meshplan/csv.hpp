#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meshplan::csv {

/// Whole file as physical lines (1-based numbering = index + 1).
/// Strips trailing '\r'; a trailing newline does not produce an extra line.
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Split one CSV line on ',' and trim ASCII blanks around each field.
/// No quoting: ids and numbers in this format never contain commas.
std::vector<std::string> split_fields(std::string_view line);

/// Strict locale-independent decimal parse; nullopt on any trailing junk.
std::optional<double> parse_number(std::string_view text);

/// Shortest decimal form that round-trips to the same double.
std::string format_number(double value);

}  // namespace meshplan::csv
