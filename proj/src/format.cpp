#include "upc/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace upc {

std::string format_exact(double value)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string format_sig6(double value)
{
    if (value == 0.0) {
        // Collapse -0 so sign noise never leaks into CSVs.
        value = 0.0;
    }
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 6);
    return std::string(buf.data(), ptr);
}

}  // namespace upc
