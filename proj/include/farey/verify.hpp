#pragma once

// The full verification suite over a range of levels.

#include <cstdint>
#include <optional>
#include <vector>

#include "farey/core.hpp"
#include "farey/ferro.hpp"
#include "farey/report.hpp"
#include "farey/spectral.hpp"
#include "farey/zeta.hpp"

namespace farey {

struct VerifyOptions {
    unsigned min_level = 1;
    unsigned max_level = kExactMaxLevel;
    /// Levels up to here run on the exact path.
    unsigned exact_max_level = kExactMaxLevel;
    double tolerance = kFloatTolerance;
    std::uint64_t seed = 20240607;
    unsigned trials = 1000;
    unsigned g_degree = 40;
    /// The exact reciprocal sum walks the whole row; skipped above this level.
    unsigned reciprocal_max_level = 20;
    /// Test aid: increments one denominator of the row at this level before
    /// the row checks run.
    std::optional<unsigned> fault_level;
};

namespace detail {

inline void append_row_checks(std::vector<CheckReport>& out, unsigned k, const VerifyOptions& opt) {
    FareyRow row = extended_row(k);
    if (opt.fault_level && *opt.fault_level == k && row.size() > 2) row.denominators[1] += 1;
    for (const auto& p : verify_row(row).properties) {
        out.push_back(make_report("row_" + p.name, k, p.pass, Rational(p.pass ? 0 : 1), p.first_failure));
    }
    const auto mismatch = first_route_mismatch(k);
    out.push_back(make_report("route_equivalence", k, !mismatch, Rational(mismatch ? 1 : 0), mismatch));
}

template <class T>
void append_spectrum_checks(std::vector<CheckReport>& out, const Spectrum<T>& spec,
                            const Spectrum<T>* next, double tol) {
    out.push_back(check_j_zero(spec, tol));
    out.push_back(check_nonnegativity(spec, tol));
    out.push_back(check_extremes(spec));
    out.push_back(check_decay(spec, tol));
    if (next) out.push_back(check_convergence(spec, *next, tol));
}

}  // namespace detail

inline std::vector<CheckReport> run_verification(const VerifyOptions& opt) {
    if (opt.min_level < 1 || opt.min_level > opt.max_level) {
        throw std::invalid_argument("verification needs 1 <= min_level <= max_level");
    }
    std::vector<CheckReport> out;

    std::optional<ExactSpectrum> exact_next;
    std::optional<FloatSpectrum> float_next;
    for (unsigned k = opt.min_level; k <= opt.max_level; ++k) {
        detail::append_row_checks(out, k, opt);
        if (k <= opt.reciprocal_max_level) out.push_back(check_reciprocal_sum(k));
        out.push_back(check_phi_k(k));

        const bool has_next = k + 1 <= opt.max_level;
        if (k <= opt.exact_max_level) {
            const ExactSpectrum spec = exact_next ? std::move(*exact_next) : interaction_exact(k);
            exact_next.reset();
            if (has_next && k + 1 <= opt.exact_max_level) {
                exact_next = interaction_exact(k + 1);
                detail::append_spectrum_checks(out, spec, &*exact_next, opt.tolerance);
            } else {
                detail::append_spectrum_checks<Rational>(out, spec, nullptr, opt.tolerance);
                if (has_next) {
                    // The increment across the exact/float boundary runs in float.
                    float_next = interaction_float(k + 1);
                    out.push_back(check_convergence(interaction_float(k), *float_next, opt.tolerance));
                }
            }
            out.push_back(check_w_strict_ferro(k, opt.exact_max_level));
            out.push_back(check_decomposition(k, opt.exact_max_level));
            out.push_back(check_g_identities(k, opt.exact_max_level));
        } else {
            const FloatSpectrum spec = float_next ? std::move(*float_next) : interaction_float(k);
            float_next.reset();
            if (has_next) float_next = interaction_float(k + 1);
            detail::append_spectrum_checks(out, spec, has_next ? &*float_next : nullptr, opt.tolerance);
        }
    }

    out.push_back(check_g_series(opt.g_degree));
    out.push_back(check_parameter_lemmas(opt.trials, opt.seed));
    return out;
}

inline bool all_pass(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports) {
        if (!r.pass) return false;
    }
    return true;
}

}  // namespace farey
