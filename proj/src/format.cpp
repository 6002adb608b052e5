#include "commlab/format.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace commlab {

std::string format_shortest(double value) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string format_human(double value) {
    if (value == 0.0) value = 0.0;
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.12g", value);
    std::string out(buf.data(), static_cast<std::size_t>(n));
    return out == "-0" ? "0" : out;
}

std::string format_fixed(double value, int decimals) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
    std::string out(buf.data(), static_cast<std::size_t>(n));
    if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') out.erase(0, 1);
    return out;
}

}  // namespace commlab
