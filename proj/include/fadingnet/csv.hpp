#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fadingnet {

// Platform-independent rendering for CSV cells: shortest round-trip digits,
// '.' decimal separator, no thousands grouping, '\n' newlines. Values with
// |x| outside [1e-4, 1e6) render as d[.ddd]e±EE scientific.
std::string format_double(double x);

std::string format_u64(std::uint64_t v);

// Joins pre-formatted cells with ',' and a trailing '\n'.
std::string csv_line(const std::vector<std::string>& cells);

}  // namespace fadingnet
