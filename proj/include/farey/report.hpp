#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include "farey/rational.hpp"

namespace farey {

enum class Mode { exact, floating };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

/// Outcome of one verification. The margin is the worst observed slack of the
/// checked inequality (negative means violated); for identities it is the
/// largest observed discrepancy.
struct CheckReport {
    std::string name;
    unsigned level = 0;
    Mode mode = Mode::exact;
    bool pass = false;
    double margin = 0.0;
    std::optional<std::string> exact_margin;
    std::optional<std::uint64_t> witness;
    std::optional<std::uint64_t> seed;
};

template <class T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

template <class T>
CheckReport make_report(std::string name, unsigned level, bool pass, const T& margin,
                        std::optional<std::uint64_t> witness = std::nullopt) {
    CheckReport r;
    r.name = std::move(name);
    r.level = level;
    r.pass = pass;
    r.witness = witness;
    if constexpr (is_exact_v<T>) {
        r.mode = Mode::exact;
        r.margin = to_double(margin);
        r.exact_margin = to_string(margin);
    } else {
        r.mode = Mode::floating;
        r.margin = static_cast<double>(margin);
    }
    return r;
}

}  // namespace farey
