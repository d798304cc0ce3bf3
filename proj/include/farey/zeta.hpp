#pragma once

// Number-theoretic side of the Farey row: denominator histograms against
// Euler's totient, and the interpolating series
//
//   Z(s, t) = sum_sigma exp(2 pi i t (1 - F(sigma))) h(sigma)^-s,   Re(s) > 2,
//
// which equals zeta(s-1)/zeta(s) at t = 0 and 1/zeta(s) at t = 1. The series
// is approximated by its exact level-k partial sum; appending zeros to sigma
// leaves F and h unchanged, so level k+1 extends level k without overlap.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "farey/core.hpp"
#include "farey/error.hpp"
#include "farey/rational.hpp"
#include "farey/report.hpp"

namespace farey {

using Complex = std::complex<double>;

/// phi(0..n), phi(0) = 0.
inline std::vector<std::uint64_t> totient_sieve(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("totient_sieve needs n >= 1");
    std::vector<std::uint64_t> phi(n + 1);
    for (std::uint64_t i = 0; i <= n; ++i) phi[i] = i;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (phi[p] != p) continue;  // composite, already touched
        for (std::uint64_t m = p; m <= n; m += p) phi[m] -= phi[m] / p;
    }
    return phi;
}

/// mu(0..n), mu(0) = 0.
inline std::vector<int> moebius_sieve(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("moebius_sieve needs n >= 1");
    std::vector<int> mu(n + 1, 1);
    std::vector<bool> composite(n + 1, false);
    mu[0] = 0;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t m = p; m <= n; m += p) {
            if (m != p) composite[m] = true;
            mu[m] = -mu[m];
        }
        if (p <= n / p) {
            for (std::uint64_t m = p * p; m <= n; m += p * p) mu[m] = 0;
        }
    }
    return mu;
}

/// phi_k(n) = #{sigma in G_k : h_k(sigma) = n}.
struct DenominatorHistogram {
    unsigned level = 0;
    std::vector<std::uint64_t> counts;  ///< indexed by n; counts[0] = 0

    std::uint64_t operator()(std::uint64_t n) const { return n < counts.size() ? counts[n] : 0; }
    std::uint64_t max_denominator() const { return counts.empty() ? 0 : counts.size() - 1; }
    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
};

inline DenominatorHistogram phi_k_histogram(unsigned k, unsigned max_level = kDefaultMaxLevel) {
    detail::require_level(k, max_level, "phi_k_histogram");
    DenominatorHistogram hist;
    hist.level = k;
    hist.counts.assign(max_denominator(k) + 1, 0);
    for_each_fraction(k, [&](std::uint64_t, std::uint64_t, std::uint64_t h) { ++hist.counts[h]; });
    return hist;
}

namespace detail {

/// B_2, B_4, ..., B_{2m} as doubles, from the exact recurrence
/// sum_{j<=n} C(n+1, j) B_j = 0.
inline std::vector<double> even_bernoulli(unsigned m) {
    std::vector<Rational> b(2 * m + 1);
    b[0] = 1;
    for (unsigned n = 1; n <= 2 * m; ++n) {
        Rational acc = 0;
        BigInt binom = 1;  // C(n+1, j)
        for (unsigned j = 0; j < n; ++j) {
            acc += Rational(binom) * b[j];
            binom = binom * (n + 1 - j) / (j + 1);
        }
        b[n] = -acc / Rational(n + 1);
    }
    std::vector<double> out;
    for (unsigned j = 1; j <= m; ++j) out.push_back(to_double(b[2 * j]));
    return out;
}

/// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

struct CompensatedComplexSum {
    CompensatedSum re;
    CompensatedSum im;

    void add(Complex z) {
        re.add(z.real());
        im.add(z.imag());
    }
    Complex value() const { return {re.value(), im.value()}; }
};

}  // namespace detail

/// zeta(s) for Re(s) > 1 by Euler-Maclaurin summation. The cut-off N is
/// doubled until the remainder bound
///   |E| <= |T_{m+1}| * |s + 2m + 1| / (Re(s) + 2m + 1)
/// falls below tol.
inline Complex zeta_oracle(Complex s, double tol = 1e-12) {
    if (!(s.real() > 1.0)) throw DomainError("zeta_oracle requires Re(s) > 1");
    if (!(tol > 0.0)) throw std::invalid_argument("zeta_oracle requires tol > 0");
    constexpr unsigned m = 12;
    static const std::vector<double> bern = detail::even_bernoulli(m + 1);

    for (std::uint64_t n_cut = 16;; n_cut *= 2) {
        const double N = static_cast<double>(n_cut);
        const Complex log_n(std::log(N), 0.0);

        detail::CompensatedComplexSum acc;
        for (std::uint64_t n = 1; n < n_cut; ++n) {
            acc.add(std::exp(-s * std::log(static_cast<double>(n))));
        }
        acc.add(std::exp((1.0 - s) * log_n) / (s - 1.0));
        acc.add(0.5 * std::exp(-s * log_n));

        // T_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
        Complex rising = s;  // s(s+1)...(s+2j-2)
        double fact = 2.0;   // (2j)!
        Complex term;
        for (unsigned j = 1; j <= m + 1; ++j) {
            term = bern[j - 1] / fact * rising * std::exp((-s - 2.0 * j + 1.0) * log_n);
            if (j <= m) {
                acc.add(term);
                rising *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
                fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
            }
        }
        const double bound =
            std::abs(term) * std::abs(s + (2.0 * m + 1.0)) / (s.real() + 2.0 * m + 1.0);
        if (bound <= 0.5 * tol || n_cut > (std::uint64_t{1} << 24)) {
            if (bound > tol) throw std::runtime_error("zeta_oracle could not reach tolerance");
            return acc.value();
        }
    }
}

/// 2 * sum_{n >= k+2} n^(1 - Re s), bounded by 2 (k+1)^(2 - Re s) / (Re s - 2)
/// and rounded up.
inline double tail_bound(unsigned k, double re_s) {
    if (!(re_s > 2.0)) throw DomainError("tail bound requires Re(s) > 2");
    const double b = 2.0 * std::pow(static_cast<double>(k) + 1.0, 2.0 - re_s) / (re_s - 2.0);
    return std::nextafter(b * (1.0 + 4 * std::numeric_limits<double>::epsilon()),
                          std::numeric_limits<double>::infinity());
}

struct PartitionEval {
    unsigned level = 0;
    Complex s;
    double t = 0.0;
    Complex value;
    double tail_bound = 0.0;
};

namespace detail {

inline void require_partition_domain(Complex s, double t) {
    if (!(s.real() > 2.0)) throw DomainError("partition requires Re(s) > 2");
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("partition requires 0 <= t <= 1");
}

/// n^-s for n = 0..max_n (entry 0 unused).
inline std::vector<Complex> power_table(std::uint64_t max_n, Complex s) {
    std::vector<Complex> out(max_n + 1);
    for (std::uint64_t n = 1; n <= max_n; ++n) out[n] = std::exp(-s * std::log(static_cast<double>(n)));
    return out;
}

}  // namespace detail

/// Z_k(s, t): the level-k partial sum, streamed over the row.
inline PartitionEval partition(unsigned k, Complex s, double t, unsigned max_level = kDefaultMaxLevel) {
    detail::require_partition_domain(s, t);
    detail::require_level(k, max_level, "partition");
    const auto pw = detail::power_table(max_denominator(k), s);
    const double two_pi_t = 2.0 * std::numbers::pi * t;

    detail::CompensatedComplexSum acc;
    for_each_fraction(k, [&](std::uint64_t, std::uint64_t r, std::uint64_t h) {
        if (t == 0.0) {
            acc.add(pw[h]);
        } else {
            const double angle = two_pi_t * static_cast<double>(h - r) / static_cast<double>(h);
            acc.add(Complex(std::cos(angle), std::sin(angle)) * pw[h]);
        }
    });
    return {k, s, t, acc.value(), tail_bound(k, s.real())};
}

/// sum_n phi_k(n) n^-s; equals Z_k(s, 0).
inline Complex histogram_sum(const DenominatorHistogram& hist, Complex s) {
    detail::CompensatedComplexSum acc;
    for (std::uint64_t n = 1; n < hist.counts.size(); ++n) {
        if (hist.counts[n] != 0) {
            acc.add(static_cast<double>(hist.counts[n]) * std::exp(-s * std::log(static_cast<double>(n))));
        }
    }
    return acc.value();
}

/// sum_{n <= n_max} mu(n) n^-s.
inline Complex moebius_partial_sum(std::uint64_t n_max, Complex s) {
    const auto mu = moebius_sieve(n_max);
    detail::CompensatedComplexSum acc;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (mu[n] != 0) acc.add(static_cast<double>(mu[n]) * std::exp(-s * std::log(static_cast<double>(n))));
    }
    return acc.value();
}

/// Closed-form value of Z(s, t) where one is known: t = 0 or t = 1.
inline std::optional<Complex> reference_value(Complex s, double t, double tol = 1e-12) {
    if (t == 1.0) return 1.0 / zeta_oracle(s, tol);
    if (t == 0.0) return zeta_oracle(s - 1.0, tol) / zeta_oracle(s, tol);
    return std::nullopt;
}

/// phi_k(n) = phi(n) for n <= k+1, phi_k <= phi everywhere, sum = 2^k.
/// Margin is min_n (phi(n) - phi_k(n)).
inline CheckReport check_phi_k(unsigned k, unsigned max_level = kDefaultMaxLevel) {
    const DenominatorHistogram hist = phi_k_histogram(k, max_level);
    const auto phi = totient_sieve(std::max<std::uint64_t>(hist.max_denominator(), k + 1));
    std::optional<std::uint64_t> witness;
    std::int64_t margin = std::numeric_limits<std::int64_t>::max();
    for (std::uint64_t n = 1; n < phi.size(); ++n) {
        const auto slack = static_cast<std::int64_t>(phi[n]) - static_cast<std::int64_t>(hist(n));
        margin = std::min(margin, slack);
        const bool bad = slack < 0 || (n <= k + 1 && slack != 0);
        if (bad && !witness) witness = n;
    }
    const bool pass = !witness && hist.total() == (std::uint64_t{1} << k);
    return make_report("phi_k_totient", k, pass, Rational(margin), witness);
}

/// Z_k(s,1) against 1/zeta(s) and the Moebius partial sum up to k+1, and
/// Z_k(s,0) against zeta(s-1)/zeta(s). Each discrepancy must stay within
/// tail_bound + slack; margins are the remaining room.
inline std::pair<CheckReport, CheckReport> check_endpoint_identities(unsigned k, Complex s,
                                                                     double slack = 1e-10,
                                                                     unsigned max_level = kDefaultMaxLevel) {
    const PartitionEval at_one = partition(k, s, 1.0, max_level);
    const PartitionEval at_zero = partition(k, s, 0.0, max_level);
    const double allowed = at_one.tail_bound + slack;

    const double d_inverse = std::abs(at_one.value - *reference_value(s, 1.0));
    const double d_moebius = std::abs(at_one.value - moebius_partial_sum(k + 1, s));
    const double d_ratio = std::abs(at_zero.value - *reference_value(s, 0.0));

    CheckReport inverse = make_report("inverse_zeta_identity", k,
                                      std::max(d_inverse, d_moebius) <= allowed,
                                      allowed - std::max(d_inverse, d_moebius));
    CheckReport ratio =
        make_report("zeta_ratio_identity", k, d_ratio <= allowed, allowed - d_ratio);
    return {inverse, ratio};
}

}  // namespace farey
