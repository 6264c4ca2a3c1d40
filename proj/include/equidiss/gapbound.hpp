#pragma once

/**
 * @file gapbound.hpp
 * @brief The DMM gap bound and the resulting lower bound on the range.
 *
 * A polynomial of degree d in k variables with coefficients at most 2^tau
 * that is positive on a region has minimum m with
 *
 *   log2(1/m) <= d (d-1)^(k-1) [(k^2+3k+1) log2 d + (k+1)(d log2 k + tau) + 3k + d + 2]
 *                + (k^2+k) log2 sqrt(d).
 *
 * Exponents are kept as exact rationals. Logarithms that are not integers
 * are rounded to a multiple of 2^-64 in the direction that enlarges the
 * exponent, so the bound stays valid.
 */

#include <mpfr.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "equidiss/coloring.hpp"
#include "equidiss/dissection/validate.hpp"
#include "equidiss/errors.hpp"
#include "equidiss/numerics/rational.hpp"

namespace equidiss {

struct TraceTerm {
    std::string label;
    Rational value;
    bool exact = true;
};

struct BoundResult {
    Rational exponent;  ///< log2(1/m), or the range exponent X
    bool exact = true;
    std::vector<TraceTerm> trace;

    /// Integer exponents print as integers, others as decimals rounded up.
    std::string str(int digits = 12) const {
        if (exponent.is_integer()) return exponent.str();
        mpfr_t v;
        mpfr_init2(v, 256);
        mpfr_set_q(v, exponent.raw().get_mpq_t(), MPFR_RNDU);
        char buf[128];
        mpfr_snprintf(buf, sizeof buf, "%.*RUf", digits, v);
        mpfr_clear(v);
        return buf;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["exponent"] = str();
        j["exact"] = exact;
        auto t = nlohmann::json::array();
        for (const auto& term : trace)
            t.push_back({{"label", term.label}, {"value", term.value.str()}, {"exact", term.exact}});
        j["trace"] = t;
        return j;
    }
};

namespace detail {

inline std::optional<long> exact_log2(const Rational& x) {
    if (x.sign() <= 0) return std::nullopt;
    const mpz_class& num = x.raw().get_num();
    const mpz_class& den = x.raw().get_den();
    if (den == 1 && mpz_popcount(num.get_mpz_t()) == 1) return static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) - 1;
    if (num == 1 && mpz_popcount(den.get_mpz_t()) == 1) return 1 - static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    return std::nullopt;
}

// log2(x) on the 2^-frac grid, rounded up (or down); exact when x is a power of two.
inline std::pair<Rational, bool> log2_dyadic(const Rational& x, bool up, unsigned frac = 64, bool shortcut = true) {
    if (x.sign() <= 0) throw DomainError("log2 of a nonpositive number");
    if (shortcut)
        if (auto e = exact_log2(x)) return {Rational(*e), true};
    const mpfr_rnd_t rnd = up ? MPFR_RNDU : MPFR_RNDD;
    mpfr_t v;
    mpfr_init2(v, 256);
    mpfr_set_q(v, x.raw().get_mpq_t(), rnd);
    mpfr_log2(v, v, rnd);
    mpfr_mul_2ui(v, v, frac, rnd);
    mpz_class z;
    if (up)
        mpfr_ceil(v, v);
    else
        mpfr_floor(v, v);
    mpfr_get_z(z.get_mpz_t(), v, rnd);
    mpfr_clear(v);
    mpz_class scale = 1;
    scale <<= frac;
    return {Rational(mpq_class(z, scale)), false};
}

inline Rational ceil_rational(const Rational& q) {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
    return Rational(mpq_class(z));
}

}  // namespace detail

struct DmmInput {
    long d = 1;
    long k = 1;
    long tau = 0;
};

/// log2(1/m_DMM). `force_rounded` evaluates every log on the 64-bit grid,
/// which must agree with the exact path whenever the logs are integers.
inline BoundResult dmm_exponent(const DmmInput& in, bool force_rounded = false) {
    if (in.d < 1 || in.k < 1 || in.tau < 0) throw PreconditionFailed("DMM input needs d >= 1, k >= 1, tau >= 0");
    BoundResult r;
    auto log2_up = [&](long v, const char* label) {
        auto out = detail::log2_dyadic(Rational(v), true, 64, !force_rounded);
        r.exact = r.exact && out.second;
        r.trace.push_back({label, out.first, out.second});
        return out.first;
    };
    const Rational d(in.d), k(in.k), tau(in.tau);
    const Rational ld = log2_up(in.d, "log2 d");
    const Rational lk = log2_up(in.k, "log2 k");
    const Rational lead = d * pow(Rational(in.d - 1), static_cast<unsigned>(in.k - 1));
    r.trace.push_back({"d (d-1)^(k-1)", lead, true});
    const Rational bracket = (k * k + Rational(3) * k + Rational(1)) * ld + (k + Rational(1)) * (d * lk + tau) +
                             Rational(3) * k + d + Rational(2);
    r.trace.push_back({"bracket", bracket, r.exact});
    const Rational tail = (k * k + k) * ld / Rational(2);
    r.trace.push_back({"(k^2+k) log2 sqrt(d)", tail, r.exact});
    r.exponent = lead * bracket + tail;
    r.trace.push_back({"log2(1/m_DMM)", r.exponent, r.exact});
    return r;
}

struct LowerBoundOptions {
    std::optional<std::size_t> nodes;  ///< actual node count; k = 2 * nodes instead of 2n + 4
    bool allow_even_n = false;
};

/**
 * Exponent X with range >= 2^-X for every dissection of the polygon into n
 * triangles. Corners must be integers; the polygon must have an odd number
 * of red-blue sides (in its given position) and integer area.
 */
inline BoundResult dissection_lower_bound(const std::vector<Point<Rational>>& polygon, std::size_t n,
                                          const LowerBoundOptions& opt = {}) {
    if (polygon.size() < 3) throw PreconditionFailed("polygon needs at least three corners");
    if (n == 0) throw PreconditionFailed("n must be positive");
    if (n % 2 == 0 && !opt.allow_even_n) throw PreconditionFailed("n must be odd");
    for (const auto& p : polygon)
        if (!p.x.is_integer() || !p.y.is_integer()) throw PreconditionFailed("polygon corners must be integers");
    const Rational E = detail::shoelace(polygon);
    if (E.sign() <= 0) throw PreconditionFailed("polygon must be counterclockwise with positive area");
    if (!E.is_integer()) throw PreconditionFailed("polygon area " + E.str() + " is not an integer");
    auto parity = rb_side_parity(polygon);
    if (!parity.odd())
        throw PreconditionFailed("polygon has " + std::to_string(parity.count) + " red-blue sides, need an odd count");

    Rational minx = polygon[0].x, miny = polygon[0].y;
    for (const auto& p : polygon) {
        minx = std::min(minx, p.x);
        miny = std::min(miny, p.y);
    }
    Rational Y(0);
    for (const auto& p : polygon) Y = std::max({Y, p.x - minx, p.y - miny});

    BoundResult r;
    const long nl = static_cast<long>(n);
    const Rational N(nl);
    const Rational X(2 * nl + 4);
    const long k = opt.nodes ? 2 * static_cast<long>(*opt.nodes) : 2 * nl + 4;
    const Rational X4Y4 = pow(X, 4) * pow(Y, 4);
    r.trace.push_back({"area E", E, true});
    r.trace.push_back({"Y (max corner coordinate after translation)", Y, true});
    r.trace.push_back({"X = 2n+4", X, true});
    r.trace.push_back({"k (variables)", Rational(k), true});

    const Rational Q = Rational(4) * N * X4Y4;
    const Rational tau = detail::ceil_rational(detail::log2_dyadic(Q, true).first);
    r.trace.push_back({"tau = ceil(log2(4 n X^4 Y^4))", tau, true});

    const BoundResult dmm = dmm_exponent({4, k, tau.raw().get_num().get_si()});
    r.exact = dmm.exact;
    r.trace.push_back({"X_dmm = dmm_exponent(4, k, tau)", dmm.exponent, dmm.exact});

    auto [l_ssr, e1] = detail::log2_dyadic(Rational(4) * N * N * X4Y4, true);
    auto [l_xy, e2] = detail::log2_dyadic(X * Y, false);
    r.exact = r.exact && e1 && e2;
    r.trace.push_back({"log2(4 n^2 X^4 Y^4)", l_ssr, e1});
    r.trace.push_back({"log2(XY)", l_xy, e2});
    const Rational raw = (dmm.exponent + l_ssr) / Rational(2) - Rational(2) * l_xy;
    r.trace.push_back({"(X_dmm + log2(4 n^2 X^4 Y^4))/2 - 2 log2(XY)", raw, r.exact});
    r.exponent = detail::ceil_rational(raw);
    r.trace.push_back({"X (rounded up)", r.exponent, true});
    return r;
}

inline std::vector<Point<Rational>> unit_square() {
    return {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1), Rational(1)}, {Rational(0), Rational(1)}};
}

}  // namespace equidiss
