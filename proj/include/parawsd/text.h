#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace parawsd {

// Splits on a single character; empty fields are kept.
std::vector<std::string_view> split(std::string_view s, char sep);

// ASCII lowercase; multi-byte UTF-8 sequences pass through unchanged.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

// Shortest round-trippable-enough decimal used in every output file ("%.6g").
std::string format_number(double value);

// Fixed two-decimal percentage, e.g. 0.74893 -> "74.89".
std::string format_percent(double fraction);

}  // namespace parawsd
