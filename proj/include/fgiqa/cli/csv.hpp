#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fgiqa::cli {

// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);

std::string csv_field(std::string_view value);

// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);

// Inverse of format_number; nullopt for anything else.
std::optional<double> parse_number(std::string_view text);

std::string_view trim(std::string_view s);

}  // namespace fgiqa::cli
