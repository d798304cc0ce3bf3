#pragma once

/**
 * @file ferro.hpp
 * @brief Executable checks of the bounds and identities behind the weak
 *        ferromagnetism of -F.
 *
 * Every check returns a CheckReport with the worst observed margin. Checks are
 * templated on the scalar: Rational runs with zero tolerance, double with the
 * caller's absolute tolerance.
 *
 * The proof machinery is exposed as well:
 *  - W_k = q_{k+1}(1,-1)(0,.) / q_{k+1}(1,1)(0,.), so that F_k = 1/2 - W_k / 2
 *    and j_k(tau) = -delta_{tau,0}/2 + (F W_k)(tau)/2;
 *  - the Moebius maps g1(x) = (x+1)/(3-x), g2(x) = (x-1)/(x+3) and the Taylor
 *    coefficients of g+- = g1 +- g2, obtained from the derivative recursion
 *    p -> 9p' - x^2 p' + 2(n+1) x p and, independently, from geometric series.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "farey/core.hpp"
#include "farey/rational.hpp"
#include "farey/report.hpp"
#include "farey/spectral.hpp"

namespace farey {

namespace detail {

// x >= 0, with slack tol in float mode.
template <class T>
bool nonneg(const T& x, double tol) {
    if constexpr (is_exact_v<T>) {
        return x >= 0;
    } else {
        return x >= -tol;
    }
}

template <class T>
T abs_value(const T& x) {
    return x < 0 ? T(-x) : x;
}

template <class T>
T dyadic_as(unsigned n) {
    if constexpr (is_exact_v<T>) {
        return dyadic(n);
    } else {
        return std::ldexp(T(1), -static_cast<int>(n));
    }
}

}  // namespace detail

/// j_k(0) against the closed form -(1 - 2^-k)/2. Margin is the discrepancy.
template <class T>
CheckReport check_j_zero(const Spectrum<T>& spec, double tol = kFloatTolerance) {
    const unsigned k = spec.level;
    const T expected = -(T(1) - detail::dyadic_as<T>(k)) / T(2);
    const T diff = detail::abs_value(T(spec[0] - expected));
    const bool pass = is_exact_v<T> ? diff == 0 : static_cast<double>(to_double(diff)) <= tol;
    return make_report("j_zero_closed_form", k, pass, diff, std::uint64_t{0});
}

/// j_k(tau) >= 0 for every tau != 0. Margin is the minimum over tau != 0.
template <class T>
CheckReport check_nonnegativity(const Spectrum<T>& spec, double tol = kFloatTolerance) {
    const unsigned k = spec.level;
    std::uint64_t arg = 1;
    for (std::uint64_t tau = 2; tau < spec.size(); ++tau) {
        if (spec[tau] < spec[arg]) arg = tau;
    }
    return make_report("weak_ferromagnetism", k, detail::nonneg(spec[arg], tol), spec[arg], arg);
}

/// argmin is tau = 0 (strictly) and argmax is tau_0 = (1,0,...,0); a tie at
/// the maximum is accepted only on exact equality.
template <class T>
CheckReport check_extremes(const Spectrum<T>& spec) {
    const unsigned k = spec.level;
    const std::uint64_t top = leading_mask(k);
    bool pass = true;
    std::optional<std::uint64_t> witness;
    T margin = spec[top] - spec[0];
    for (std::uint64_t tau = 1; tau < spec.size(); ++tau) {
        const T above_min = spec[tau] - spec[0];
        if (above_min < margin) margin = above_min;
        if (!(above_min > 0) && pass) {
            pass = false;
            witness = tau;
        }
    }
    for (std::uint64_t tau = 0; tau < spec.size(); ++tau) {
        if (tau == top) continue;
        const T below_max = spec[top] - spec[tau];
        if (below_max < margin) margin = below_max;
        if (below_max < 0 && pass) {
            pass = false;
            witness = tau;
        }
    }
    return make_report("extremes", k, pass, margin, witness);
}

/// j_k(tau) <= 2^-max(supp(tau)) for tau != 0.
template <class T>
CheckReport check_decay(const Spectrum<T>& spec, double tol = kFloatTolerance) {
    const unsigned k = spec.level;
    std::optional<T> worst;
    std::uint64_t arg = 0;
    for (std::uint64_t tau = 1; tau < spec.size(); ++tau) {
        const T slack = detail::dyadic_as<T>(max_support(tau, k)) - spec[tau];
        if (!worst || slack < *worst) {
            worst = slack;
            arg = tau;
        }
    }
    const T margin = worst.value_or(T(0));
    return make_report("decay_bound", k, detail::nonneg(margin, tol), margin,
                       worst ? std::optional<std::uint64_t>(arg) : std::nullopt);
}

/// |j_k(tau) - j_{k+1}(tau, 0)| <= 2^-(k+1) for every tau in G_k.
template <class T>
CheckReport check_convergence(const Spectrum<T>& spec, const Spectrum<T>& next,
                              double tol = kFloatTolerance) {
    const unsigned k = spec.level;
    if (next.level != k + 1) throw std::invalid_argument("check_convergence needs levels k and k+1");
    const T bound = detail::dyadic_as<T>(k + 1);
    T margin = bound;
    std::uint64_t arg = 0;
    for (std::uint64_t tau = 0; tau < spec.size(); ++tau) {
        const T slack = bound - detail::abs_value(T(spec[tau] - next[tau << 1]));
        if (slack < margin) {
            margin = slack;
            arg = tau;
        }
    }
    return make_report("convergence_increment", k, detail::nonneg(margin, tol), margin, arg);
}

template <class T>
CheckReport check_j_zero(unsigned k, double tol = kFloatTolerance) {
    return check_j_zero(interaction<T>(k), tol);
}
template <class T>
CheckReport check_nonnegativity(unsigned k, double tol = kFloatTolerance) {
    return check_nonnegativity(interaction<T>(k), tol);
}
template <class T>
CheckReport check_extremes(unsigned k) {
    return check_extremes(interaction<T>(k));
}
template <class T>
CheckReport check_decay(unsigned k, double tol = kFloatTolerance) {
    return check_decay(interaction<T>(k), tol);
}
template <class T>
CheckReport check_convergence(unsigned k, double tol = kFloatTolerance) {
    return check_convergence(interaction<T>(k), interaction<T>(k + 1), tol);
}

/// Sum over s of 1 / (h^_k(s) h^_k(s+1)), exactly. Partial sums telescope to
/// F^_k(s+1), so the accumulator stays small.
inline Rational reciprocal_sum(unsigned k, unsigned max_level = kDefaultMaxLevel) {
    const FareyRow row = extended_row(k, max_level);
    Rational sum = 0;
    for (std::size_t s = 0; s + 1 < row.size(); ++s) {
        sum += Rational(BigInt(1), BigInt(row.denominators[s]) * row.denominators[s + 1]);
    }
    return sum;
}

inline CheckReport check_reciprocal_sum(unsigned k, unsigned max_level = kDefaultMaxLevel) {
    const Rational diff = detail::abs_value(Rational(reciprocal_sum(k, max_level) - 1));
    return make_report("reciprocal_sum", k, diff == 0, diff);
}

/// W_k as (numerator, denominator) arrays, denominator = h_k > 0.
struct WObservable {
    unsigned level = 0;
    std::vector<std::int64_t> numerators;
    std::vector<std::uint64_t> denominators;

    Rational operator[](std::uint64_t s) const {
        return Rational(BigInt(numerators[s]), BigInt(denominators[s]));
    }
};

inline WObservable w_observable_parts(unsigned k) {
    detail::require_level(k, kIndexMaxLevel, "w_observable");
    const std::uint64_t n = std::uint64_t{1} << k;
    WObservable w;
    w.level = k;
    w.numerators.resize(n);
    w.denominators.resize(n);
    for (std::uint64_t s = 0; s < n; ++s) {
        w.numerators[s] = q_eval<std::int64_t>(k, 1, -1, s);
        w.denominators[s] = static_cast<std::uint64_t>(q_eval<std::int64_t>(k, 1, 1, s));
    }
    return w;
}

inline std::vector<Rational> w_observable(unsigned k) {
    const WObservable w = w_observable_parts(k);
    std::vector<Rational> out;
    out.reserve(w.numerators.size());
    for (std::size_t s = 0; s < w.numerators.size(); ++s) out.push_back(w[s]);
    return out;
}

/// Normalized transform of W_k, exactly.
inline std::vector<Rational> w_transform(unsigned k, unsigned max_level = kExactMaxLevel) {
    detail::require_level(k, max_level, "w_transform");
    const WObservable w = w_observable_parts(k);
    return exact_transform(w.numerators, w.denominators);
}

/// W_k is strictly ferromagnetic: every coefficient, tau = 0 included, is >= 0.
inline CheckReport check_w_strict_ferro(unsigned k, unsigned max_level = kExactMaxLevel) {
    const auto coeffs = w_transform(k, max_level);
    const auto it = std::min_element(coeffs.begin(), coeffs.end());
    return make_report("w_strict_ferromagnetism", k, *it >= 0, *it,
                       static_cast<std::uint64_t>(it - coeffs.begin()));
}

/// j_k(tau) = -delta_{tau,0}/2 + (F W_k)(tau)/2 at every tau.
inline CheckReport check_decomposition(unsigned k, unsigned max_level = kExactMaxLevel) {
    const ExactSpectrum j = interaction_exact(k, max_level);
    const auto wt = w_transform(k, max_level);
    Rational worst = 0;
    std::optional<std::uint64_t> witness;
    for (std::uint64_t tau = 0; tau < j.size(); ++tau) {
        Rational rhs = wt[tau] / 2;
        if (tau == 0) rhs -= Rational(1, 2);
        const Rational diff = detail::abs_value(Rational(j[tau] - rhs));
        if (diff > worst) {
            worst = diff;
            witness = tau;
        }
    }
    return make_report("w_decomposition", k, worst == 0, worst, witness);
}

inline Rational g1(const Rational& x) { return (x + 1) / (3 - x); }
inline Rational g2(const Rational& x) { return (x - 1) / (x + 3); }

/// g1(W_k) = q(1,0)/q(1,2) and g2(W_k) = q(0,-1)/q(2,1) pointwise, where
/// q(a,b) stands for q_{k+1}(a,b)(0,.).
inline CheckReport check_g_identities(unsigned k, unsigned max_level = kExactMaxLevel) {
    detail::require_level(k, max_level, "check_g_identities");
    const WObservable w = w_observable_parts(k);
    std::optional<std::uint64_t> witness;
    for (std::uint64_t s = 0; s < w.numerators.size(); ++s) {
        const Rational x = w[s];
        const Rational lhs1(BigInt(q_eval<std::int64_t>(k, 1, 0, s)),
                            BigInt(q_eval<std::int64_t>(k, 1, 2, s)));
        const Rational lhs2(BigInt(q_eval<std::int64_t>(k, 0, -1, s)),
                            BigInt(q_eval<std::int64_t>(k, 2, 1, s)));
        if (lhs1 != g1(x) || lhs2 != g2(x)) {
            witness = s;
            break;
        }
    }
    return make_report("g_identities", k, !witness.has_value(), Rational(witness ? 1 : 0), witness);
}

/// Polynomial with integer coefficients, index = degree.
struct PolynomialNN {
    std::vector<BigInt> coefficients;

    BigInt at_zero() const { return coefficients.empty() ? BigInt(0) : coefficients.front(); }
    bool nonnegative() const {
        return std::all_of(coefficients.begin(), coefficients.end(),
                           [](const BigInt& c) { return c >= 0; });
    }
    std::size_t degree() const {
        std::size_t d = coefficients.size();
        while (d > 1 && coefficients[d - 1] == 0) --d;
        return d == 0 ? 0 : d - 1;
    }
};

/// q = 9 p' - x^2 p' + 2(n+1) x p: the numerator of the (n+1)-st derivative
/// given the numerator p of the n-th, over (x^2 - 9)^(n+1).
inline PolynomialNN derivative_step(const PolynomialNN& p, unsigned n) {
    const auto& a = p.coefficients;
    PolynomialNN q;
    q.coefficients.assign(a.size() + 1, BigInt(0));
    for (std::size_t i = 1; i < a.size(); ++i) {
        const BigInt d = a[i] * static_cast<unsigned>(i);  // coefficient of x^(i-1) in p'
        q.coefficients[i - 1] += 9 * d;
        q.coefficients[i + 1] -= d;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        q.coefficients[i + 1] += 2 * (n + 1) * a[i];
    }
    return q;
}

struct GSeries {
    std::vector<Rational> plus;   ///< Taylor coefficients of g+ at 0
    std::vector<Rational> minus;  ///< Taylor coefficients of g- at 0
    std::vector<PolynomialNN> plus_numerators;
    std::vector<PolynomialNN> minus_numerators;
};

/// Coefficients c_n = g^(n)(0)/n! for n = 0..n_max from the derivative
/// recursion: g^(n) = (-1)^(n+1) p_n / (x^2 - 9)^(n+1) gives
/// c_n = p_n(0) / (9^(n+1) n!).
inline GSeries g_series_coefficients(unsigned n_max) {
    GSeries out;
    PolynomialNN p_plus{{BigInt(0), BigInt(8)}};                // 8x
    PolynomialNN p_minus{{BigInt(6), BigInt(0), BigInt(2)}};    // 2x^2 + 6
    BigInt nine_pow = 9;
    BigInt factorial = 1;
    for (unsigned n = 0; n <= n_max; ++n) {
        if (n > 0) {
            p_plus = derivative_step(p_plus, n - 1);
            p_minus = derivative_step(p_minus, n - 1);
            nine_pow *= 9;
            factorial *= n;
        }
        out.plus_numerators.push_back(p_plus);
        out.minus_numerators.push_back(p_minus);
        out.plus.emplace_back(p_plus.at_zero(), nine_pow * factorial);
        out.minus.emplace_back(p_minus.at_zero(), nine_pow * factorial);
    }
    return out;
}

/// The same coefficients from g+(x) = (8x/9) / (1 - x^2/9) and
/// g-(x) = ((2x^2 + 6)/9) / (1 - x^2/9).
inline GSeries g_series_closed_form(unsigned n_max) {
    GSeries out;
    for (unsigned n = 0; n <= n_max; ++n) {
        const unsigned m = n / 2;
        const BigInt pow9 = boost::multiprecision::pow(BigInt(9), m + 1);
        if (n % 2 == 1) {
            out.plus.emplace_back(BigInt(8), pow9);
            out.minus.emplace_back(0);
        } else {
            out.plus.emplace_back(0);
            out.minus.emplace_back(n == 0 ? Rational(2, 3) : Rational(BigInt(24), pow9));
        }
    }
    return out;
}

/// All recursion numerators have nonnegative coefficients and the resulting
/// Taylor coefficients agree exactly with the geometric closed forms.
inline CheckReport check_g_series(unsigned n_max) {
    const GSeries rec = g_series_coefficients(n_max);
    const GSeries ref = g_series_closed_form(n_max);
    std::optional<std::uint64_t> witness;
    Rational min_coeff = rec.minus.front();
    for (unsigned n = 0; n <= n_max && !witness; ++n) {
        min_coeff = std::min({min_coeff, rec.plus[n], rec.minus[n]});
        const bool ok = rec.plus_numerators[n].nonnegative() &&
                        rec.minus_numerators[n].nonnegative() &&
                        rec.plus_numerators[n].degree() <= n + 2 &&
                        rec.minus_numerators[n].degree() <= n + 2 && rec.plus[n] == ref.plus[n] &&
                        rec.minus[n] == ref.minus[n];
        if (!ok) witness = n;
    }
    return make_report("g_series_coefficients", n_max, !witness && min_coeff >= 0, min_coeff, witness);
}

/// Randomized checks of the linearity and composition lemmas of the q-family:
///   q_k(s0,s1) = s0 q_k(1,0) + s1 q_k(0,1),
///   q_{k+l}(s0,s1)(sigma,tau) = q_{l+1}(q_k(s0,s1)(sigma), q_k(s0,s1)(1-sigma))(0,tau).
/// Margin counts failed trials.
inline CheckReport check_parameter_lemmas(unsigned trials, std::uint64_t seed, unsigned max_total = 12) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> param(-10, 10);
    std::uniform_int_distribution<unsigned> level(1, max_total - 1);
    unsigned failures = 0;
    std::optional<std::uint64_t> witness;
    for (unsigned trial = 0; trial < trials; ++trial) {
        const unsigned k = level(rng);
        const unsigned l = std::uniform_int_distribution<unsigned>(0, max_total - k)(rng);
        const std::int64_t s0 = param(rng);
        const std::int64_t s1 = param(rng);
        const Bits sigma = id_map(k, rng() & ((std::uint64_t{1} << k) - 1));
        const std::uint64_t tau = l == 0 ? 0 : rng() & ((std::uint64_t{1} << l) - 1);

        Bits flipped = sigma;
        for (auto& b : flipped) b ^= 1U;
        Bits joined = sigma;
        const Bits tail = id_map(l, tau);
        joined.insert(joined.end(), tail.begin(), tail.end());

        const std::int64_t direct = q_family<std::int64_t>(sigma, s0, s1);
        const std::int64_t linear = s0 * q_family<std::int64_t>(sigma, 1, 0) +
                                    s1 * q_family<std::int64_t>(sigma, 0, 1);
        const std::int64_t whole = q_family<std::int64_t>(joined, s0, s1);
        const std::int64_t staged =
            q_eval<std::int64_t>(l, direct, q_family<std::int64_t>(flipped, s0, s1), tau);
        if (direct != linear || whole != staged) {
            ++failures;
            if (!witness) witness = trial;
        }
    }
    CheckReport r =
        make_report("parameter_lemmas", max_total, failures == 0, Rational(failures), witness);
    r.seed = seed;
    return r;
}

}  // namespace farey
