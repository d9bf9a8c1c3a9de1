#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace miae {

// Doubles rendered with 17 significant digits parse back bit-exactly.
std::string g17(double value);

// Strict full-string double parse; empty on failure.
std::optional<double> parse_double(std::string_view text);

std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace miae
