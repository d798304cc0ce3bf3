#pragma once

// Fourier analysis on G_k = (Z/2Z)^k.
//
// Transform convention: (F f)(tau) = 2^-k * sum_sigma (-1)^(sigma . tau) f(sigma),
// with tau stored as a bitmask under the same sigma_1 = most significant bit
// convention as ConfigIndex. The interaction coefficients are
// j_k = -(F F_k), the negated transform of the Farey function.

#include <algorithm>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "farey/core.hpp"
#include "farey/error.hpp"
#include "farey/format.hpp"
#include "farey/rational.hpp"

namespace farey {

enum class Normalization {
    none,  ///< plain butterfly, sum over characters
    unit,  ///< multiplied by 2^-n
};

/// Scalars the transform may be normalized in.
template <class T>
concept TransformField = std::floating_point<T> || std::same_as<T, Rational>;

/// log2 of a power-of-two length; throws otherwise.
inline unsigned log2_length(std::size_t n) {
    if (!std::has_single_bit(n)) {
        throw std::invalid_argument("transform length " + std::to_string(n) +
                                    " is not a power of two");
    }
    return static_cast<unsigned>(std::countr_zero(n));
}

namespace detail {

template <class T>
void scale_dyadic(std::span<T> values, unsigned n) {
    if constexpr (std::floating_point<T>) {
        const T f = std::ldexp(T(1), -static_cast<int>(n));
        for (auto& v : values) v *= f;
    } else if constexpr (std::same_as<T, Rational>) {
        const Rational f = dyadic(n);
        for (auto& v : values) v *= f;
    } else {
        throw std::invalid_argument("unit normalization requires a field type");
    }
}

}  // namespace detail

/// In-place Walsh-Hadamard butterfly. The stage order is fixed, so float
/// results are reproducible bit for bit.
template <class T>
void fwht(std::span<T> values, Normalization norm = Normalization::none) {
    const unsigned n = log2_length(values.size());
    const std::size_t len = values.size();
    for (std::size_t h = 1; h < len; h <<= 1) {
        for (std::size_t i = 0; i < len; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                T x = values[j];
                T y = values[j + h];
                values[j] = x + y;
                values[j + h] = x - y;
            }
        }
    }
    if (norm == Normalization::unit) detail::scale_dyadic(values, n);
}

/// Direct character sum, O(4^n). Reference for fwht; n <= 12.
template <class T>
std::vector<T> naive_transform(std::span<const T> values, Normalization norm = Normalization::unit) {
    const unsigned n = log2_length(values.size());
    detail::require_level(n, 12, "naive_transform");
    const std::size_t len = values.size();
    std::vector<T> out(len, T(0));
    for (std::size_t tau = 0; tau < len; ++tau) {
        T acc(0);
        for (std::size_t s = 0; s < len; ++s) {
            if (std::popcount(s & tau) & 1U) {
                acc -= values[s];
            } else {
                acc += values[s];
            }
        }
        out[tau] = acc;
    }
    if (norm == Normalization::unit) detail::scale_dyadic(std::span<T>(out), n);
    return out;
}

/// Coefficients j_k(tau) for all tau in G_k.
template <class T>
struct Spectrum {
    unsigned level = 0;
    std::vector<T> values;

    std::size_t size() const { return values.size(); }
    const T& operator[](std::uint64_t tau) const { return values[tau]; }
};

using ExactSpectrum = Spectrum<Rational>;
using FloatSpectrum = Spectrum<double>;

/// F_k(sigma) for all sigma, as T.
template <class T>
std::vector<T> farey_function(unsigned k) {
    std::vector<T> out;
    out.reserve(std::size_t{1} << k);
    for_each_fraction(k, [&](std::uint64_t, std::uint64_t num, std::uint64_t den) {
        if constexpr (std::same_as<T, Rational>) {
            out.emplace_back(BigInt(num), BigInt(den));
        } else {
            out.push_back(static_cast<T>(num) / static_cast<T>(den));
        }
    });
    return out;
}

/// Exact normalized transform of sigma -> num[sigma] / den[sigma]. The values
/// are lifted to integers over the lcm of the denominators so the butterfly
/// runs without any gcd work.
inline std::vector<Rational> exact_transform(std::span<const std::int64_t> num,
                                             std::span<const std::uint64_t> den) {
    if (num.size() != den.size()) throw std::invalid_argument("numerator/denominator size mismatch");
    const unsigned k = log2_length(num.size());
    BigInt lcm = 1;
    {
        std::vector<std::uint64_t> distinct(den.begin(), den.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (auto d : distinct) {
            if (d == 0) throw std::invalid_argument("zero denominator");
            lcm = boost::multiprecision::lcm(lcm, BigInt(d));
        }
    }
    std::vector<BigInt> lifted(num.size());
    for (std::size_t s = 0; s < num.size(); ++s) lifted[s] = BigInt(num[s]) * (lcm / den[s]);
    fwht(std::span<BigInt>(lifted));

    const BigInt scale = lcm << k;
    std::vector<Rational> out;
    out.reserve(lifted.size());
    for (auto& v : lifted) out.emplace_back(v, scale);
    return out;
}

inline ExactSpectrum interaction_exact(unsigned k, unsigned max_level = kExactMaxLevel) {
    detail::require_level(k, max_level, "exact interaction");
    const std::size_t len = std::size_t{1} << k;
    std::vector<std::int64_t> num(len);
    std::vector<std::uint64_t> den(len);
    for_each_fraction(k, [&](std::uint64_t s, std::uint64_t r, std::uint64_t h) {
        num[s] = static_cast<std::int64_t>(r);
        den[s] = h;
    });
    ExactSpectrum out;
    out.level = k;
    out.values = exact_transform(num, den);
    for (auto& v : out.values) v = -v;
    return out;
}

inline FloatSpectrum interaction_float(unsigned k, unsigned max_level = kDefaultMaxLevel) {
    detail::require_level(k, max_level, "float interaction");
    FloatSpectrum out;
    out.level = k;
    out.values = farey_function<double>(k);
    fwht(std::span<double>(out.values), Normalization::unit);
    for (auto& v : out.values) v = -v;
    return out;
}

template <class T>
Spectrum<T> interaction(unsigned k) {
    if constexpr (std::same_as<T, Rational>) {
        return interaction_exact(k);
    } else {
        return interaction_float(k);
    }
}

/// max(supp(tau)) for a nonzero level-k mask: the 1-based position of the
/// rightmost set spin.
inline unsigned max_support(std::uint64_t tau, unsigned k) {
    if (tau == 0) throw std::invalid_argument("max_support of the zero configuration");
    if (k < 64 && (tau >> k) != 0) throw std::out_of_range("mask exceeds level");
    return k - static_cast<unsigned>(std::countr_zero(tau));
}

/// tau_0 = (1, 0, ..., 0).
inline std::uint64_t leading_mask(unsigned k) { return std::uint64_t{1} << (k - 1); }

/// A configuration of G_infinity, stored level-free as its support.
class FiniteSupport {
public:
    FiniteSupport() = default;

    /// 1-based coordinate positions; order and duplicates are irrelevant.
    explicit FiniteSupport(std::vector<unsigned> positions) : positions_(std::move(positions)) {
        std::sort(positions_.begin(), positions_.end());
        positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
        if (!positions_.empty() && positions_.front() == 0) {
            throw std::invalid_argument("support positions are 1-based");
        }
    }

    static FiniteSupport from_mask(std::uint64_t mask, unsigned k) {
        std::vector<unsigned> pos;
        for (unsigned i = 1; i <= k; ++i) {
            if ((mask >> (k - i)) & 1U) pos.push_back(i);
        }
        return FiniteSupport(std::move(pos));
    }

    bool empty() const { return positions_.empty(); }
    const std::vector<unsigned>& positions() const { return positions_; }

    /// 0 for the empty support.
    unsigned max_position() const { return positions_.empty() ? 0 : positions_.back(); }

    /// p_k(tau) as a level-k mask.
    std::uint64_t mask(unsigned k) const {
        if (max_position() > k) throw std::out_of_range("support exceeds level");
        std::uint64_t m = 0;
        for (auto p : positions_) m |= std::uint64_t{1} << (k - p);
        return m;
    }

private:
    std::vector<unsigned> positions_;
};

/// j_k(tau) at a single mask by a direct streaming character sum.
template <class T>
T coefficient(unsigned k, std::uint64_t tau) {
    T acc(0);
    for_each_fraction(k, [&](std::uint64_t s, std::uint64_t num, std::uint64_t den) {
        T f;
        if constexpr (std::same_as<T, Rational>) {
            f = Rational(BigInt(num), BigInt(den));
        } else {
            f = static_cast<T>(num) / static_cast<T>(den);
        }
        if (std::popcount(s & tau) & 1U) {
            acc += f;
        } else {
            acc -= f;
        }
    });
    if constexpr (std::same_as<T, Rational>) {
        return acc * dyadic(k);
    } else {
        return std::ldexp(acc, -static_cast<int>(k));
    }
}

/// Estimate of the limit coefficient j(tau) by j_k(p_k(tau)).
template <class T>
struct LimitEstimate {
    FiniteSupport tau;
    unsigned level_used = 0;
    T value{};
    /// Sum of the per-level increments 2^-(m+1) for m >= level_used.
    double error_bound = 0.0;
};

template <class T>
LimitEstimate<T> limit_estimate(const FiniteSupport& tau, unsigned k) {
    if (tau.max_position() > k) {
        throw std::out_of_range("support of tau exceeds level " + std::to_string(k));
    }
    LimitEstimate<T> out;
    out.tau = tau;
    out.level_used = k;
    out.value = coefficient<T>(k, tau.mask(k));
    out.error_bound = std::ldexp(1.0, -static_cast<int>(k));
    return out;
}

inline std::string format_value(const Rational& r) { return to_string(r); }
inline std::string format_value(double x) { return format_decimal(x); }

/// CSV with columns tau_index,tau_bits,j_value and, optionally, decay_bound
/// (2^-max(supp(tau)), empty at tau = 0).
template <class T>
void write_spectrum_csv(std::ostream& out, const Spectrum<T>& spec, bool with_bounds = false) {
    out << "tau_index,tau_bits,j_value";
    if (with_bounds) out << ",decay_bound";
    out << '\n';
    for (std::uint64_t tau = 0; tau < spec.size(); ++tau) {
        out << tau << ',' << format_bits(tau, spec.level) << ',' << format_value(spec[tau]);
        if (with_bounds) {
            out << ',';
            if (tau != 0) {
                out << format_decimal(std::ldexp(1.0, -static_cast<int>(max_support(tau, spec.level))));
            }
        }
        out << '\n';
    }
}

}  // namespace farey
