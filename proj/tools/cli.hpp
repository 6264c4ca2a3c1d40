#pragma once

/**
 * @file cli.hpp
 * @brief The equidiss command line: construct, search, optimize, verify,
 * bound, tarry and tables.
 *
 * Exit codes: 0 success, 1 validation failure (reasons as JSON on the error
 * stream), 2 usage error. Every run starts its output with a '#' header line
 * naming the version, seed and precision.
 */

#include <mpfr.h>

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "equidiss/adpoly/optimize.hpp"
#include "equidiss/coloring.hpp"
#include "equidiss/constructions/search.hpp"
#include "equidiss/constructions/slices.hpp"
#include "equidiss/constructions/systematic.hpp"
#include "equidiss/constructions/tarry.hpp"
#include "equidiss/dissection/io.hpp"
#include "equidiss/dissection/validate.hpp"
#include "equidiss/gapbound.hpp"
#include "equidiss/version.hpp"

namespace equidiss::cli {

using nlohmann::json;

/// Reported with exit code 1.
class ValidationFailure : public Error {
public:
    ValidationFailure(std::string what, std::vector<std::string> reasons)
        : Error(std::move(what)), reasons(std::move(reasons)) {}
    std::vector<std::string> reasons;
};

/// Six significant digits, lowercase exponent; `full` prints every digit.
inline std::string sci(const BigFloat& x, bool full = false) {
    if (full) return x.str();
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.5Re", x.raw());
    return buf;
}

inline std::string sci(double x, bool full = false) {
    char buf[64];
    std::snprintf(buf, sizeof buf, full ? "%.17e" : "%.5e", x);
    return buf;
}

inline std::string opt_sci(const std::optional<double>& x, bool full = false) { return x ? sci(*x, full) : ""; }

template <class S>
json metrics_json(const Metrics<S>& m) {
    json j;
    j["range"] = ScalarTraits<S>::str(m.range);
    j["rms"] = m.rms.str();
    j["ssr"] = ScalarTraits<S>::str(m.ssr);
    j["lambda"] = m.lambda ? json(*m.lambda) : json(nullptr);
    return j;
}

/// precision 0 means chosen per n, negative means exact arithmetic only.
inline void header(std::ostream& out, const std::string& command, std::uint64_t seed, long precision) {
    out << "# equidiss " << kVersion << " command=" << command << " seed=" << seed << " precision=";
    if (precision > 0)
        out << precision;
    else
        out << (precision == 0 ? "auto" : "exact");
    out << '\n';
}

inline std::vector<Point<Rational>> read_polygon(const std::string& spec) {
    if (spec == "square") return unit_square();
    std::ifstream in(spec);
    if (!in) throw ParseError("cannot open " + spec);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(spec + ": " + e.what());
    }
    const json& arr = j.is_object() ? j.at("polygon") : j;
    std::vector<Point<Rational>> poly;
    for (const auto& p : arr) poly.push_back({detail::json_rational(p.at(0)), detail::json_rational(p.at(1))});
    return poly;
}

struct Options {
    // construct
    std::string family;
    std::size_t n = 0;
    std::string signs;
    std::string top_area;
    long precision = 0;
    std::string out_path;
    // search
    std::string search_what;
    std::string mode = "exhaustive";
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    std::size_t top = 10;
    std::uint64_t budget = 0;
    unsigned threads = 0;
    bool full = false;
    // optimize / verify
    std::string in_path;
    int restarts = 64;
    bool monsky = false, legality = false, show_metrics = false;
    // bound
    std::string bound_kind;
    long d = 0, k = 0, tau = 0;
    std::string polygon = "square";
    std::size_t nodes = 0;
    bool allow_even = false;
    // tarry
    unsigned tarry_k = 3;
    std::size_t max_len = 16;
    // tables
    int table = 0;
    std::size_t n_max = 0;
};

inline int do_construct(const Options& o, std::ostream& out) {
    DissectionFile file;
    json report;
    report["family"] = o.family;
    report["n"] = o.n;
    LegalityReport legality;
    if (o.family == "slices") {
        auto s = slice_family(o.n, o.precision > 0 ? o.precision : kDefaultPrecision);
        header(out, "construct", o.seed, s.file.precision_bits);
        report["metrics"] = metrics_json(s.metrics);
        legality = s.legality;
        file = std::move(s.file);
    } else if (o.family == "thue-morse" && o.top_area.empty()) {
        auto s = systematic_construction(o.n, o.precision);
        header(out, "construct", o.seed, s.file.precision_bits);
        report["metrics"] = metrics_json(s.metrics);
        report["base_n"] = s.base_n;
        report["epsilon"] = s.base_epsilon.str();
        legality = s.legality;
        file = std::move(s.file);
    } else if (o.family == "thue-morse" || o.family == "signs") {
        TrapezoidCutSpec spec;
        if (o.family == "signs") {
            if (o.signs.empty()) throw PreconditionFailed("--signs is required for the signs family");
            spec = TrapezoidCutSpec{o.n, SignSequence::parse(o.signs), Rational(0), o.precision};
        } else {
            if (thue_morse_base_size(o.n) != o.n)
                throw PreconditionFailed("--top-area with thue-morse needs n = 2^k + 1");
            spec = TrapezoidCutSpec::thue_morse_spec(o.n, o.precision);
        }
        if (!o.top_area.empty()) spec.top_area = Rational::parse(o.top_area);
        auto cut = build_trapezoid_cut(spec);
        header(out, "construct", o.seed, cut.solve.precision);
        report["metrics"] = metrics_json(cut.metrics);
        report["epsilon"] = cut.solve.epsilon.str();
        report["residual"] = cut.solve.residual.str(20);
        report["signs"] = spec.signs.str();
        legality = cut.legality;
        file = std::move(cut.file);
    } else {
        throw PreconditionFailed("unknown family " + o.family);
    }
    auto valid = validate_abstract(file.dissection);
    report["legal"] = legality.legal;
    report["valid"] = valid.ok();
    write_dissection(file, o.out_path);
    out << report.dump() << '\n';
    if (!legality.legal || !valid.ok()) {
        auto reasons = legality.reasons;
        reasons.insert(reasons.end(), valid.violations.begin(), valid.violations.end());
        throw ValidationFailure("constructed dissection failed its checks", reasons);
    }
    return 0;
}

inline int do_search(const Options& o, std::ostream& out) {
    if (o.search_what != "signs") throw PreconditionFailed("only 'search signs' is available");
    SearchConfig cfg;
    cfg.n = o.n;
    cfg.mode = o.mode == "random" ? SearchMode::Random : SearchMode::Exhaustive;
    if (o.mode != "random" && o.mode != "exhaustive") throw PreconditionFailed("mode must be exhaustive or random");
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    if (o.budget) cfg.budget = o.budget;
    cfg.precision = o.precision;
    cfg.threads = o.threads;
    auto r = search_signs(cfg);
    header(out, "search signs", o.seed, o.precision > 0 ? o.precision : default_trapezoid_precision(o.n));
    out << "sequence,epsilon,range,rms,lambda\n";
    for (std::size_t i = 0; i < r.ranked.size() && i < o.top; ++i) {
        const auto& e = r.ranked[i];
        out << e.signs.str() << ',' << sci(e.solve.epsilon, o.full) << ',' << sci(e.range, o.full) << ','
            << sci(e.rms, o.full) << ',' << opt_sci(e.lambda, o.full) << '\n';
    }
    return 0;
}

inline int do_optimize(const Options& o, std::ostream& out) {
    auto in = read_dissection(o.in_path);
    auto valid = validate_abstract(in.dissection);
    if (!valid.ok()) throw ValidationFailure("input dissection is not valid", valid.violations);
    OptimizeConfig cfg;
    cfg.restarts = o.restarts;
    cfg.seed = o.seed;
    cfg.precision = o.precision > 0 ? o.precision : kDefaultPrecision;
    cfg.threads = o.threads;
    header(out, "optimize", o.seed, cfg.precision);
    OptimizeResult r;
    try {
        r = minimize_ssr(in.dissection, cfg);
    } catch (const NoLegalPointFound& e) {
        throw ValidationFailure("no legal point found", {e.what()});
    }
    DissectionFile best;
    best.dissection = in.dissection;
    best.map = r.map;
    best.precision_bits = cfg.precision;
    best.metadata = in.metadata;
    best.metadata["optimizer"] = {{"restarts", cfg.restarts}, {"seed", cfg.seed}, {"best_restart", r.restart}};
    if (!o.out_path.empty()) write_dissection(best, o.out_path);
    json report = metrics_json(r.metrics);
    report["restart"] = r.restart;
    report["legal_restarts"] = r.legal_restarts;
    out << report.dump() << '\n';
    return 0;
}

inline int do_verify(const Options& o, std::ostream& out) {
    auto file = read_dissection(o.in_path);
    const bool any = o.monsky || o.legality || o.show_metrics;
    const bool want_legality = o.legality || !any, want_metrics = o.show_metrics || !any;
    header(out, "verify", o.seed, file.is_rational() ? -1 : file.precision_bits);
    json report;
    std::vector<std::string> reasons;
    auto valid = validate_abstract(file.dissection);
    report["valid"] = valid.ok();
    reasons.insert(reasons.end(), valid.violations.begin(), valid.violations.end());
    std::visit(
        [&](const auto& phi) {
            if (want_legality) {
                auto rep = check_legality(file.dissection, phi);
                report["legality"] = {{"legal", rep.legal}, {"reasons", rep.reasons}};
                reasons.insert(reasons.end(), rep.reasons.begin(), rep.reasons.end());
            }
            if (want_metrics && phi.size() > 0 && !file.dissection.triangles.empty())
                report["metrics"] = metrics_json(metrics(file.dissection, phi));
        },
        file.map);
    if (o.monsky) {
        try {
            report["monsky"] = certificate_to_json(certify(file));
        } catch (const Error& e) {
            report["monsky"] = nullptr;
            reasons.push_back(std::string("monsky: ") + e.what());
        }
    }
    out << report.dump() << '\n';
    if (!reasons.empty()) throw ValidationFailure("verification failed", reasons);
    return 0;
}

inline int do_bound(const Options& o, std::ostream& out) {
    header(out, "bound " + o.bound_kind, o.seed, 64);
    if (o.bound_kind == "gap") {
        out << dmm_exponent({o.d, o.k, o.tau}).to_json().dump() << '\n';
    } else if (o.bound_kind == "dissection") {
        LowerBoundOptions opt;
        if (o.nodes) opt.nodes = o.nodes;
        opt.allow_even_n = o.allow_even;
        out << dissection_lower_bound(read_polygon(o.polygon), o.n, opt).to_json().dump() << '\n';
    } else if (o.bound_kind == "predicted") {
        auto r = predicted_bound(o.n);
        json j;
        j["n"] = o.n;
        j["base_n"] = r.base_n;
        j["value"] = sci(r.approx(), o.full);
        j["exact"] = r.value.str();
        j["valid"] = r.valid;
        j["lambda"] = r.valid ? json(*lambda_of(r.approx(), o.n)) : json(nullptr);
        out << j.dump() << '\n';
    } else {
        throw PreconditionFailed("bound kind must be gap, dissection or predicted");
    }
    return 0;
}

inline int do_tarry(const Options& o, std::ostream& out) {
    header(out, "tarry", o.seed, -1);
    auto r = tarry_escott(o.tarry_k, o.max_len);
    json j;
    j["k"] = r.k;
    j["max_len"] = r.max_len;
    auto sols = json::array();
    for (const auto& s : r.solutions) sols.push_back({s.with_one, s.complement});
    j["solutions"] = sols;
    out << j.dump() << '\n';
    return 0;
}

inline int do_tables(const Options& o, std::ostream& out) {
    if (o.table == 3) {
        const std::size_t n_max = o.n_max ? o.n_max : 13;
        header(out, "tables 3", o.seed, o.precision);
        out << "n,sequence,epsilon,rms,lambda_opt,lambda_c,lambda_star\n";
        for (std::size_t n = 3; n <= n_max; n += 2) {
            SearchConfig cfg;
            cfg.n = n;
            cfg.precision = o.precision;
            cfg.threads = o.threads;
            if (o.budget) cfg.budget = o.budget;
            auto r = search_signs(cfg);
            if (r.ranked.empty()) throw Error("no sign sequence solved for n = " + std::to_string(n));
            const auto& best = r.ranked.front();
            auto sys = systematic_construction(n);
            auto star = predicted_bound(n);
            out << n << ',' << best.signs.str() << ',' << sci(best.solve.epsilon, o.full) << ','
                << sci(best.rms, o.full) << ',' << opt_sci(best.lambda, o.full) << ','
                << opt_sci(sys.metrics.lambda, o.full) << ','
                << (star.valid ? opt_sci(lambda_of(star.approx(), n), o.full) : std::string()) << '\n';
        }
        return 0;
    }
    if (o.table == 4) {
        const std::size_t n_max = o.n_max ? o.n_max : 129;
        header(out, "tables 4", o.seed, o.precision);
        out << "n,range_c,range_star,lambda_c,lambda_star\n";
        std::vector<std::size_t> sizes{3, 5};
        for (std::size_t n = 9; n <= n_max; n = 2 * n - 1) sizes.push_back(n);
        for (std::size_t n : sizes) {
            if (n > n_max) break;
            auto sys = systematic_construction(n, o.precision);
            auto star = predicted_bound(n);
            out << n << ',' << sci(sys.metrics.range, o.full) << ','
                << (star.base_n >= 5 ? sci(star.approx(), o.full) : std::string()) << ','
                << opt_sci(sys.metrics.lambda, o.full) << ','
                << (star.valid ? opt_sci(lambda_of(star.approx(), n), o.full) : std::string()) << '\n';
        }
        return 0;
    }
    throw PreconditionFailed("tables accepts 3 or 4");
}

/// Runs one command line (without the program name).
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nearly equal-area triangle dissections", "equidiss"};
    app.require_subcommand(1);
    Options o;

    auto* construct = app.add_subcommand("construct", "Build a dissection from one of the families");
    construct->add_option("--family", o.family, "slices | thue-morse | signs")->required()
        ->check(CLI::IsMember({"slices", "thue-morse", "signs"}));
    construct->add_option("--n", o.n, "triangle count")->required();
    construct->add_option("--signs", o.signs, "sign sequence such as +--+");
    construct->add_option("--top-area", o.top_area, "area of the top right triangle, p/q");
    construct->add_option("--precision", o.precision, "bits (default: chosen from n)");
    construct->add_option("--out", o.out_path, "output dissection file")->required();
    construct->add_option("--seed", o.seed, "recorded in the header");

    auto* search = app.add_subcommand("search", "Search sign sequences");
    search->add_option("what", o.search_what, "signs")->required();
    search->add_option("--n", o.n)->required();
    search->add_option("--mode", o.mode, "exhaustive | random")->check(CLI::IsMember({"exhaustive", "random"}));
    search->add_option("--samples", o.samples);
    search->add_option("--seed", o.seed);
    search->add_option("--top", o.top);
    search->add_option("--budget", o.budget);
    search->add_option("--precision", o.precision);
    search->add_option("--threads", o.threads);
    search->add_flag("--full", o.full, "print every digit");

    auto* optimize = app.add_subcommand("optimize", "Minimize SSR over the maps of a combinatorial type");
    optimize->add_option("file", o.in_path)->required()->check(CLI::ExistingFile);
    optimize->add_option("--restarts", o.restarts);
    optimize->add_option("--seed", o.seed);
    optimize->add_option("--precision", o.precision);
    optimize->add_option("--threads", o.threads);
    optimize->add_option("--out", o.out_path);

    auto* verify = app.add_subcommand("verify", "Check a dissection file");
    verify->add_option("file", o.in_path)->required()->check(CLI::ExistingFile);
    verify->add_flag("--monsky", o.monsky);
    verify->add_flag("--legality", o.legality);
    verify->add_flag("--metrics", o.show_metrics);

    auto* bound = app.add_subcommand("bound", "Gap and range bounds");
    bound->add_option("kind", o.bound_kind, "gap | dissection | predicted")->required()
        ->check(CLI::IsMember({"gap", "dissection", "predicted"}));
    bound->add_option("--d", o.d);
    bound->add_option("--k", o.k);
    bound->add_option("--tau", o.tau);
    bound->add_option("--polygon", o.polygon, "square or a JSON file");
    bound->add_option("--n", o.n);
    bound->add_option("--nodes", o.nodes);
    bound->add_flag("--allow-even", o.allow_even);
    bound->add_flag("--full", o.full);

    auto* tarry = app.add_subcommand("tarry", "Equal power sum partitions");
    tarry->add_option("--k", o.tarry_k);
    tarry->add_option("--max-len", o.max_len);

    auto* tables = app.add_subcommand("tables", "Reproduce the range tables as CSV");
    tables->add_option("which", o.table, "3 or 4")->required()->check(CLI::IsMember({3, 4}));
    tables->add_option("--n-max", o.n_max);
    tables->add_option("--precision", o.precision);
    tables->add_option("--budget", o.budget);
    tables->add_option("--threads", o.threads);
    tables->add_flag("--full", o.full);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (*construct) return do_construct(o, out);
        if (*search) return do_search(o, out);
        if (*optimize) return do_optimize(o, out);
        if (*verify) return do_verify(o, out);
        if (*bound) return do_bound(o, out);
        if (*tarry) return do_tarry(o, out);
        if (*tables) return do_tables(o, out);
    } catch (const ValidationFailure& e) {
        err << json{{"status", "failed"}, {"error", e.what()}, {"reasons", e.reasons}}.dump() << '\n';
        return 1;
    } catch (const Error& e) {
        err << json{{"status", "failed"}, {"error", e.what()}, {"reasons", json::array({e.what()})}}.dump() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace equidiss::cli
