#pragma once

// Command-line front end: generate, spectrum, verify, partition.
//
// Exit codes: 0 success / all checks pass, 1 check failure or internal error,
// 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "farey/farey.hpp"

namespace farey::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Format { csv, json };

struct RunConfig {
    std::string subcommand;
    unsigned level = 0;
    unsigned min_level = 1;
    std::optional<Mode> mode;  ///< unset: exact up to the exact threshold, float above
    Format format = Format::csv;
    double tolerance = kFloatTolerance;
    double s_re = 3.0;
    double s_im = 0.0;
    double t = 0.0;
    std::string out;  ///< empty: standard output
    unsigned max_level = kDefaultMaxLevel;
    std::uint64_t seed = VerifyOptions{}.seed;
    unsigned trials = VerifyOptions{}.trials;
    bool bounds = false;
    std::optional<unsigned> inject_fault;
};

/// Raised for argument combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Mode resolve_mode(const RunConfig& cfg, unsigned k) {
    const Mode m = cfg.mode.value_or(k <= kExactMaxLevel ? Mode::exact : Mode::floating);
    if (m == Mode::exact && k > kExactMaxLevel) {
        throw UsageError("exact mode supports levels up to " + std::to_string(kExactMaxLevel) +
                         "; use --mode float for level " + std::to_string(k));
    }
    return m;
}

inline nlohmann::json to_json(const CheckReport& r) {
    nlohmann::json j{{"name", r.name},
                     {"level", r.level},
                     {"mode", to_string(r.mode)},
                     {"pass", r.pass},
                     {"margin", r.margin},
                     {"witness", nullptr}};
    if (r.witness) j["witness"] = *r.witness;
    if (r.exact_margin) j["exact_margin"] = *r.exact_margin;
    if (r.seed) j["seed"] = *r.seed;
    return j;
}

inline nlohmann::json to_json(const PartitionEval& p, std::optional<Complex> reference) {
    nlohmann::json j{{"k", p.level},
                     {"s_re", p.s.real()},
                     {"s_im", p.s.imag()},
                     {"t", p.t},
                     {"z_re", p.value.real()},
                     {"z_im", p.value.imag()},
                     {"tail_bound", p.tail_bound},
                     {"reference_value", nullptr},
                     {"discrepancy", nullptr}};
    if (reference) {
        j["reference_value"] = {{"re", reference->real()}, {"im", reference->imag()}};
        j["discrepancy"] = std::abs(p.value - *reference);
    }
    return j;
}

inline int cmd_generate(const RunConfig& cfg, std::ostream& out) {
    const FareyRow row = extended_row(cfg.level, cfg.max_level);
    if (cfg.format == Format::csv) {
        write_row_csv(out, row);
        return kExitOk;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (std::uint64_t s = 0; s < row.size(); ++s) {
        arr.push_back({{"index", s},
                       {"numerator", row.numerators[s]},
                       {"denominator", row.denominators[s]},
                       {"value", format_decimal(row.at(s).value())}});
    }
    out << arr.dump(2) << '\n';
    return kExitOk;
}

template <class T>
void emit_spectrum(const Spectrum<T>& spec, const RunConfig& cfg, std::ostream& out) {
    if (cfg.format == Format::csv) {
        write_spectrum_csv(out, spec, cfg.bounds);
        return;
    }
    nlohmann::json values = nlohmann::json::array();
    for (std::uint64_t tau = 0; tau < spec.size(); ++tau) {
        nlohmann::json row{{"tau_index", tau}, {"tau_bits", format_bits(tau, spec.level)}};
        if constexpr (is_exact_v<T>) {
            row["j_value"] = to_string(spec[tau]);
        } else {
            row["j_value"] = spec[tau];
        }
        if (cfg.bounds && tau != 0) {
            row["decay_bound"] = std::ldexp(1.0, -static_cast<int>(max_support(tau, spec.level)));
        }
        values.push_back(std::move(row));
    }
    nlohmann::json doc{{"level", spec.level},
                       {"mode", is_exact_v<T> ? "exact" : "float"},
                       {"values", std::move(values)}};
    out << doc.dump(2) << '\n';
}

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    if (resolve_mode(cfg, cfg.level) == Mode::exact) {
        emit_spectrum(interaction_exact(cfg.level), cfg, out);
    } else {
        emit_spectrum(interaction_float(cfg.level, cfg.max_level), cfg, out);
    }
    return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    VerifyOptions opt;
    opt.min_level = cfg.min_level;
    opt.max_level = cfg.level;
    opt.tolerance = cfg.tolerance;
    opt.seed = cfg.seed;
    opt.trials = cfg.trials;
    opt.fault_level = cfg.inject_fault;
    if (opt.min_level < 1 || opt.min_level > opt.max_level) {
        throw UsageError("verify needs 1 <= --min-level <= --level");
    }
    if (opt.max_level > cfg.max_level) {
        throw UsageError("--level exceeds --max-level");
    }
    if (cfg.mode == Mode::exact) {
        resolve_mode(cfg, opt.max_level);
    } else if (cfg.mode == Mode::floating) {
        opt.exact_max_level = 0;
    }

    const auto reports = run_verification(opt);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
    return all_pass(reports) ? kExitOk : kExitFailure;
}

inline int cmd_partition(const RunConfig& cfg, std::ostream& out) {
    const Complex s(cfg.s_re, cfg.s_im);
    if (!(s.real() > 2.0)) throw UsageError("partition requires Re(s) > 2");
    if (!(cfg.t >= 0.0 && cfg.t <= 1.0)) throw UsageError("partition requires 0 <= t <= 1");
    const PartitionEval p = partition(cfg.level, s, cfg.t, cfg.max_level);
    out << to_json(p, reference_value(s, cfg.t)).dump(2) << '\n';
    return kExitOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Modified Farey sequence: rows, Walsh-Hadamard spectra, verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string mode_name;
    std::string format_name = "csv";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "Output file (default: standard output)");
        sub->add_option("--max-level", cfg.max_level, "Largest level allowed for full rows")
            ->check(CLI::Range(0U, kIndexMaxLevel));
    };

    auto* gen = app.add_subcommand("generate", "Emit the extended row at level k");
    gen->add_option("-k,--level", cfg.level, "Level k")->required();
    gen->add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_common(gen);

    auto* spec = app.add_subcommand("spectrum", "Emit the interaction coefficients j_k");
    spec->add_option("-k,--level", cfg.level, "Level k")->required();
    spec->add_option("--mode", mode_name, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    spec->add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    spec->add_flag("--bounds", cfg.bounds, "Add the 2^-max(supp) decay bound column");
    add_common(spec);

    auto* ver = app.add_subcommand("verify", "Run all checks for levels min-level..k");
    cfg.level = kExactMaxLevel;
    ver->add_option("-k,--level", cfg.level, "Highest level checked")->capture_default_str();
    ver->add_option("--min-level", cfg.min_level, "Lowest level checked")->capture_default_str();
    ver->add_option("--mode", mode_name, "exact or float (default: exact up to 12)")
        ->check(CLI::IsMember({"exact", "float"}));
    ver->add_option("--format", format_name, "json")->check(CLI::IsMember({"json"}));
    ver->add_option("--tolerance", cfg.tolerance, "Absolute tolerance for float-mode checks")
        ->check(CLI::PositiveNumber);
    ver->add_option("--seed", cfg.seed, "Seed for the randomized lemma checks")->capture_default_str();
    ver->add_option("--trials", cfg.trials, "Randomized lemma trials")->capture_default_str();
    ver->add_option("--inject-fault", cfg.inject_fault, "Corrupt the row at this level (test aid)");
    add_common(ver);

    auto* part = app.add_subcommand("partition", "Evaluate Z_k(s, t)");
    part->add_option("-k,--level", cfg.level, "Truncation level k")->required();
    part->add_option("--s-re", cfg.s_re, "Re(s), must exceed 2")->required();
    part->add_option("--s-im", cfg.s_im, "Im(s)");
    part->add_option("--t", cfg.t, "Phase parameter in [0, 1]")->required();
    part->add_option("--format", format_name, "json")->check(CLI::IsMember({"json"}));
    add_common(part);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (!mode_name.empty()) cfg.mode = mode_name == "exact" ? Mode::exact : Mode::floating;
    cfg.format = format_name == "json" ? Format::json : Format::csv;
    if (cfg.subcommand == "verify" || cfg.subcommand == "partition") cfg.format = Format::json;

    try {
        std::ofstream file;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw UsageError("cannot open " + cfg.out);
        }
        std::ostream& sink = cfg.out.empty() ? out : file;

        if (cfg.subcommand == "generate") return cmd_generate(cfg, sink);
        if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg, sink);
        if (cfg.subcommand == "verify") return cmd_verify(cfg, sink);
        return cmd_partition(cfg, sink);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const LevelError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace farey::cli
