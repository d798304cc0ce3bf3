#pragma once

/**
 * @file core.hpp
 * @brief The modified Farey sequence on the hypercube group (Z/2Z)^k.
 *
 * Row k is obtained from row k-1 by inserting the mediant between every pair
 * of neighbours, starting from 0/1, 1/1. Positions are addressed two ways:
 *
 *  - as extended indices s in {0, ..., 2^k}, where the row is built bottom-up
 *    by the mediant recursion (FareyRow, extended_row);
 *  - as configurations sigma in (Z/2Z)^k, where numerator and denominator are
 *    members of the two-parameter family q_k(s0, s1) evaluated by a left to
 *    right scan over the bits (QState, q_eval).
 *
 * Both routes agree position by position; cross_check_routes() asserts it.
 * Configurations map to indices with sigma_1 as the most significant bit, so
 * integer order on indices is lexicographic order on configurations.
 */

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "farey/checked.hpp"
#include "farey/error.hpp"
#include "farey/format.hpp"

namespace farey {

/// One spin per entry, each 0 or 1; entry 0 is sigma_1.
using Bits = std::vector<std::uint8_t>;

namespace detail {

inline void require_index_level(unsigned k) {
    require_level(k, kIndexMaxLevel, "index");
}

}  // namespace detail

/// An element of (Z/2Z)^k encoded as an integer in [0, 2^k).
class ConfigIndex {
public:
    ConfigIndex(unsigned level, std::uint64_t index) : level_(level), index_(index) {
        detail::require_index_level(level);
        if (index >= (std::uint64_t{1} << level)) {
            throw std::out_of_range("configuration index " + std::to_string(index) +
                                    " out of range for level " + std::to_string(level));
        }
    }

    static ConfigIndex from_bits(std::span<const std::uint8_t> bits) {
        detail::require_index_level(static_cast<unsigned>(bits.size()));
        std::uint64_t s = 0;
        for (auto b : bits) {
            if (b > 1) throw std::invalid_argument("configuration entries must be 0 or 1");
            s = (s << 1) | b;
        }
        return ConfigIndex(static_cast<unsigned>(bits.size()), s);
    }

    unsigned level() const { return level_; }
    std::uint64_t index() const { return index_; }

    /// sigma_i for i in 1..k.
    std::uint8_t bit(unsigned i) const {
        return static_cast<std::uint8_t>((index_ >> (level_ - i)) & 1U);
    }

    Bits bits() const {
        Bits out(level_);
        for (unsigned i = 1; i <= level_; ++i) out[i - 1] = bit(i);
        return out;
    }

    /// Appends sigma_{k+1} = 0, the embedding G_k -> G_{k+1}.
    ConfigIndex embed() const { return ConfigIndex(level_ + 1, index_ << 1); }

    auto operator<=>(const ConfigIndex&) const = default;

private:
    unsigned level_;
    std::uint64_t index_;
};

/// A position in the extended row {0, ..., 2^k}.
class ExtendedIndex {
public:
    ExtendedIndex(unsigned level, std::uint64_t index) : level_(level), index_(index) {
        detail::require_index_level(level);
        if (index > (std::uint64_t{1} << level)) {
            throw std::out_of_range("extended index " + std::to_string(index) +
                                    " out of range for level " + std::to_string(level));
        }
    }

    /// The canonical representative of a configuration (the projection Pi_k).
    explicit ExtendedIndex(const ConfigIndex& c) : level_(c.level()), index_(c.index()) {}

    unsigned level() const { return level_; }
    std::uint64_t index() const { return index_; }
    bool is_right_endpoint() const { return index_ == (std::uint64_t{1} << level_); }

    auto operator<=>(const ExtendedIndex&) const = default;

private:
    unsigned level_;
    std::uint64_t index_;
};

/// Id_k: the bit decomposition of s, most significant first.
inline Bits id_map(unsigned k, std::uint64_t s) { return ConfigIndex(k, s).bits(); }

inline std::uint64_t from_bits(std::span<const std::uint8_t> bits) {
    return ConfigIndex::from_bits(bits).index();
}

/// A reduced fraction in [0, 1].
struct Fraction {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;

    double value() const {
        return static_cast<double>(numerator) / static_cast<double>(denominator);
    }
    std::string str() const {
        return std::to_string(numerator) + "/" + std::to_string(denominator);
    }

    bool operator==(const Fraction&) const = default;
};

inline Fraction mediant(const Fraction& a, const Fraction& b) {
    return {detail::checked_add(a.numerator, b.numerator),
            detail::checked_add(a.denominator, b.denominator)};
}

/// Strict order by cross multiplication.
inline bool less(const Fraction& a, const Fraction& b) {
    using U = unsigned __int128;
    return U(a.numerator) * b.denominator < U(b.numerator) * a.denominator;
}

/// (value on the prefix, value on the complemented prefix) of the q-family.
template <class Int>
struct QState {
    Int a;
    Int b;

    void consume(unsigned bit) {
        if (bit == 0) {
            b = detail::checked_add(a, b);
        } else {
            a = detail::checked_add(a, b);
        }
    }
};

/// q_k(s0, s1)(sigma) for sigma in G_k, k >= 1.
template <class Int = std::int64_t>
Int q_family(std::span<const std::uint8_t> sigma, const Int& s0, const Int& s1) {
    if (sigma.empty()) throw std::invalid_argument("q_family requires at least one spin");
    QState<Int> st = sigma[0] == 0 ? QState<Int>{s0, s1} : QState<Int>{s1, s0};
    for (std::size_t i = 1; i < sigma.size(); ++i) st.consume(sigma[i]);
    return st.a;
}

/// q_{k+1}(s0, s1)(0, Id_k(s)). With (1, 1) this is the denominator h_k,
/// with (0, 1) the numerator z_k.
template <class Int = std::int64_t>
Int q_eval(unsigned k, const Int& s0, const Int& s1, std::uint64_t s) {
    const ConfigIndex c(k, s);
    QState<Int> st{s0, s1};
    for (unsigned i = 1; i <= k; ++i) st.consume(c.bit(i));
    return st.a;
}

/// F_k(sigma) by the q-family route.
inline Fraction q_fraction(unsigned k, std::uint64_t s) {
    const ConfigIndex c(k, s);
    QState<std::uint64_t> num{0, 1};
    QState<std::uint64_t> den{1, 1};
    for (unsigned i = 1; i <= k; ++i) {
        num.consume(c.bit(i));
        den.consume(c.bit(i));
    }
    return {num.a, den.a};
}

/// The extended level-k row in structure-of-arrays layout.
struct FareyRow {
    unsigned level = 0;
    std::vector<std::uint64_t> numerators;
    std::vector<std::uint64_t> denominators;

    std::size_t size() const { return denominators.size(); }
    Fraction at(std::uint64_t s) const { return {numerators.at(s), denominators.at(s)}; }
};

/// Builds r^_k and h^_k bottom-up. Level L contributes the odd multiples of
/// 2^(k-L), each the mediant of its two neighbours at distance 2^(k-L).
inline FareyRow extended_row(unsigned k, unsigned max_level = kDefaultMaxLevel) {
    detail::require_level(k, max_level, "extended_row");
    detail::require_index_level(k);
    const std::uint64_t n = std::uint64_t{1} << k;

    FareyRow row;
    row.level = k;
    row.numerators.assign(n + 1, 0);
    row.denominators.assign(n + 1, 0);
    row.numerators[0] = 0;
    row.denominators[0] = 1;
    row.numerators[n] = 1;
    row.denominators[n] = 1;

    for (unsigned level = 1; level <= k; ++level) {
        const std::uint64_t stride = std::uint64_t{1} << (k - level);
        for (std::uint64_t s = stride; s < n; s += 2 * stride) {
            row.numerators[s] =
                detail::checked_add(row.numerators[s - stride], row.numerators[s + stride]);
            row.denominators[s] =
                detail::checked_add(row.denominators[s - stride], row.denominators[s + stride]);
        }
    }
    return row;
}

/// F^_k(s) for s in {0, ..., 2^k}, by descending the mediant tree.
inline Fraction farey_value(unsigned k, std::uint64_t s) {
    const ExtendedIndex e(k, s);
    if (s == 0) return {0, 1};
    if (e.is_right_endpoint()) return {1, 1};

    // s = m * 2^j with m odd: F^_k(s) = F^_{k-j}(m).
    const unsigned depth = k - static_cast<unsigned>(__builtin_ctzll(s));
    const std::uint64_t m = s >> (k - depth);
    Fraction lo{0, 1};
    Fraction hi{1, 1};
    for (unsigned i = 1;; ++i) {
        const Fraction mid = mediant(lo, hi);
        if (i == depth) return mid;
        if (((m >> (depth - i)) & 1U) == 0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Visits (s, numerator, denominator) for s = 0 .. 2^k - 1 in increasing order,
/// i.e. F_k over G_k, without materializing the row.
template <class Visitor>
void for_each_fraction(unsigned k, Visitor&& visit) {
    detail::require_index_level(k);
    std::uint64_t s = 0;
    // In-order walk of the mediant tree; emits the left end of each leaf interval.
    auto walk = [&](auto&& self, std::uint64_t ln, std::uint64_t ld, std::uint64_t rn,
                    std::uint64_t rd, unsigned depth) -> void {
        if (depth == 0) {
            visit(s++, ln, ld);
            return;
        }
        const std::uint64_t mn = ln + rn;
        const std::uint64_t md = ld + rd;
        self(self, ln, ld, mn, md, depth - 1);
        self(self, mn, md, rn, rd, depth - 1);
    };
    walk(walk, 0, 1, 1, 1, k);
}

/// Fibonacci number F(n) with F(1) = F(2) = 1.
inline std::uint64_t fibonacci(unsigned n) {
    std::uint64_t a = 0;
    std::uint64_t b = 1;
    for (unsigned i = 0; i < n; ++i) {
        const std::uint64_t c = detail::checked_add(a, b);
        a = b;
        b = c;
    }
    return a;
}

/// Largest denominator in row k.
inline std::uint64_t max_denominator(unsigned k) { return fibonacci(k + 2); }

struct PropertyResult {
    std::string name;
    bool pass = true;
    std::optional<std::uint64_t> first_failure;
};

struct RowReport {
    unsigned level = 0;
    std::vector<PropertyResult> properties;

    bool pass() const {
        for (const auto& p : properties) {
            if (!p.pass) return false;
        }
        return true;
    }
    const PropertyResult& property(const std::string& name) const {
        for (const auto& p : properties) {
            if (p.name == name) return p;
        }
        throw std::out_of_range("no property named " + name);
    }
};

/// Checks endpoints, strict monotonicity, unimodularity of neighbours and the
/// reflection symmetry s <-> 2^k - s. Failures are reported, never thrown.
inline RowReport verify_row(const FareyRow& row) {
    detail::require_index_level(row.level);
    const std::uint64_t n = std::uint64_t{1} << row.level;
    if (row.numerators.size() != n + 1 || row.denominators.size() != n + 1) {
        throw std::invalid_argument("row arrays must have length 2^k + 1");
    }
    const auto& r = row.numerators;
    const auto& h = row.denominators;

    RowReport report;
    report.level = row.level;

    auto record = [&](std::string name, auto&& fails_at) {
        PropertyResult p{std::move(name), true, std::nullopt};
        fails_at(p);
        report.properties.push_back(std::move(p));
    };
    auto fail = [](PropertyResult& p, std::uint64_t s) {
        p.pass = false;
        p.first_failure = s;
    };

    record("endpoints", [&](PropertyResult& p) {
        if (r[0] != 0 || h[0] != 1) {
            fail(p, 0);
        } else if (r[n] != 1 || h[n] != 1) {
            fail(p, n);
        }
    });
    record("monotonicity", [&](PropertyResult& p) {
        for (std::uint64_t s = 0; s < n; ++s) {
            if (h[s] == 0 || !less({r[s], h[s]}, {r[s + 1], h[s + 1]})) {
                fail(p, s);
                return;
            }
        }
    });
    record("unimodularity", [&](PropertyResult& p) {
        using I = __int128;
        for (std::uint64_t s = 0; s < n; ++s) {
            if (I(h[s]) * I(r[s + 1]) - I(h[s + 1]) * I(r[s]) != 1) {
                fail(p, s);
                return;
            }
        }
    });
    record("symmetry", [&](PropertyResult& p) {
        using U = unsigned __int128;
        for (std::uint64_t s = 0; s <= n; ++s) {
            if (U(r[s]) + r[n - s] != h[s] || h[n - s] != h[s]) {
                fail(p, s);
                return;
            }
        }
    });
    return report;
}

/// Corollary of the two constructions: h^_k o Pi_k == h_k o Id_k and the same
/// for numerators. Returns the first disagreeing index, if any.
inline std::optional<std::uint64_t> first_route_mismatch(unsigned k,
                                                         unsigned max_level = kDefaultMaxLevel) {
    const FareyRow row = extended_row(k, max_level);
    const std::uint64_t n = std::uint64_t{1} << k;
    for (std::uint64_t s = 0; s < n; ++s) {
        const Fraction q = q_fraction(k, s);
        if (q.numerator != row.numerators[s] || q.denominator != row.denominators[s]) return s;
    }
    return std::nullopt;
}

inline bool cross_check_routes(unsigned k, unsigned max_level = kDefaultMaxLevel) {
    return !first_route_mismatch(k, max_level).has_value();
}

/// CSV with columns index,numerator,denominator,value.
inline void write_row_csv(std::ostream& out, const FareyRow& row) {
    out << "index,numerator,denominator,value\n";
    for (std::uint64_t s = 0; s < row.size(); ++s) {
        out << s << ',' << row.numerators[s] << ',' << row.denominators[s] << ','
            << format_decimal(row.at(s).value()) << '\n';
    }
}

}  // namespace farey
