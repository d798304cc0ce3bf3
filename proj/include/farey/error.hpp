#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace farey {

/// Largest level for which exact rational spectra are computed.
inline constexpr unsigned kExactMaxLevel = 12;

/// Default cap for full-row materialization (2^26 + 1 entries).
inline constexpr unsigned kDefaultMaxLevel = 26;

/// Indices are stored in 64 bits; 2^k itself must be representable.
inline constexpr unsigned kIndexMaxLevel = 63;

/// Absolute tolerance used by float-mode checks.
inline constexpr double kFloatTolerance = 1e-12;

/// Raised when a fixed-width computation would wrap. Callers may retry on
/// the arbitrary-precision path.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Raised when a requested level exceeds what the chosen path supports.
class LevelError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Raised for arguments outside a function's mathematical domain
/// (e.g. Re(s) <= 2 for the partition function).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

inline void require_level(unsigned k, unsigned max_level, const char* what) {
    if (k > max_level) {
        throw LevelError(std::string(what) + ": level " + std::to_string(k) +
                         " exceeds maximum " + std::to_string(max_level));
    }
}

}  // namespace detail

}  // namespace farey
