#pragma once

#include <string>

namespace commlab {

/// Shortest decimal that parses back to the same double. Used in TSV/CSV.
std::string format_shortest(double value);

/// 12 significant digits (printf %.12g), negative zero printed as 0.
std::string format_human(double value);

/// Fixed-point with `decimals` digits; used for SVG coordinates.
std::string format_fixed(double value, int decimals);

}  // namespace commlab
