#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace farey {

/// Shortest round-trip decimal representation; '.' separator regardless of locale.
inline std::string format_decimal(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc{}) return "nan";
    return std::string(buf, res.ptr);
}

/// The bits of a level-k mask as a 0/1 string, sigma_1 first.
inline std::string format_bits(std::uint64_t mask, unsigned k) {
    std::string out(k, '0');
    for (unsigned i = 0; i < k; ++i) {
        if ((mask >> (k - 1 - i)) & 1U) out[i] = '1';
    }
    return out;
}

}  // namespace farey
