#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nfg {

// Shortest round-trippable text for a double (17 significant digits).
std::string format_double(double value);

// Splits on commas and trims surrounding whitespace. No quoting support.
std::vector<std::string> split_csv_line(std::string_view line);

// Throws ParseError unless the whole field is a number.
double parse_double(const std::string& field);

}  // namespace nfg
