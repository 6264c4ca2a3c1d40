#pragma once

/**
 * @file trapezoid.hpp
 * @brief Trapezoid cuts driven by a sign sequence, and the epsilon solver.
 *
 * The unit square is split into a top right triangle of area T and the
 * trapezoid below the line from (0,1) to (1,1-2T). Extending the trapezoid
 * to the triangle with apex O = (1/(2T), 0), triangles of areas
 * a_i = (1-T)/(n-1) + s_i eps are cut off from left to right, alternately
 * advancing the top point (s_i = +1) or the bottom point (s_i = -1) along the
 * rays towards O. Both chains reach the right side together iff
 * Phi(eps) = prod rho_i^{s_i} = 1.
 */

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "equidiss/constructions/predicted.hpp"
#include "equidiss/constructions/thue_morse.hpp"
#include "equidiss/dissection/collinearity.hpp"
#include "equidiss/dissection/geometry.hpp"
#include "equidiss/dissection/io.hpp"
#include "equidiss/errors.hpp"
#include "equidiss/numerics/bigfloat.hpp"
#include "equidiss/numerics/scalar.hpp"

namespace equidiss {

struct TrapezoidCutSpec {
    std::size_t n = 0;
    SignSequence signs;
    Rational top_area;    ///< zero means the default 1/n
    long precision = 0;   ///< zero means default_trapezoid_precision(n)

    Rational top() const { return top_area.is_zero() ? Rational(1, static_cast<long>(n)) : top_area; }
    long bits() const { return precision > 0 ? precision : default_trapezoid_precision(n); }

    /// Spec for the first n-1 Thue-Morse signs.
    static TrapezoidCutSpec thue_morse_spec(std::size_t n, long precision = 0) {
        if (n < 3) throw PreconditionFailed("trapezoid cuts need n >= 3");
        return TrapezoidCutSpec{n, thue_morse(n - 1), Rational(0), precision};
    }
};

/// Rational constants of the cut: T, the nominal area alpha, the apex
/// triangle area Omega = 1/(4T), the apex abscissa 1/(2T) and the final ray
/// parameter 1 - 2T.
struct TrapezoidGeometry {
    Rational top, alpha, omega, apex_x, final_param;

    explicit TrapezoidGeometry(const TrapezoidCutSpec& spec) {
        top = spec.top();
        const long m = static_cast<long>(spec.n) - 1;
        alpha = (Rational(1) - top) / Rational(m);
        omega = Rational(1) / (Rational(4) * top);
        apex_x = Rational(1) / (Rational(2) * top);
        final_param = Rational(1) - Rational(2) * top;
    }
};

inline void validate_spec(const TrapezoidCutSpec& spec) {
    if (spec.n < 3 || spec.n % 2 == 0) throw PreconditionFailed("trapezoid cuts need odd n >= 3");
    if (spec.signs.size() != spec.n - 1)
        throw PreconditionFailed("sign sequence must have length n-1 = " + std::to_string(spec.n - 1));
    if (!spec.signs.balanced()) throw PreconditionFailed("sign sequence is not balanced");
    const Rational T = spec.top();
    if (T.sign() <= 0 || T >= Rational(1, 2)) throw PreconditionFailed("top area must lie in (0, 1/2)");
}

/// The ray ratios rho_i = (Omega - A_i)/(Omega - A_{i-1}) at a given eps.
template <class S>
std::vector<S> ray_ratios(const TrapezoidCutSpec& spec, const S& eps) {
    validate_spec(spec);
    TrapezoidGeometry g(spec);
    const S omega = scalar_like<S>(g.omega, eps);
    const S alpha = scalar_like<S>(g.alpha, eps);
    std::vector<S> out;
    S prefix = scalar_like<S>(0, eps);
    for (std::size_t i = 0; i < spec.signs.size(); ++i) {
        S next = spec.signs[i] > 0 ? prefix + alpha + eps : prefix + alpha - eps;
        S den = omega - prefix, num = omega - next;
        if (!(num > scalar_like<S>(0, eps)) || !(den > scalar_like<S>(0, eps)))
            throw DomainError("prefix area reaches the apex triangle");
        out.push_back(num / den);
        prefix = next;
    }
    return out;
}

namespace detail {

// L_i = ln(Omega - A_i) for i = 0..m, with dL_i/deps when requested.
inline std::vector<BigFloat> apex_logs(const TrapezoidCutSpec& spec, const BigFloat& eps,
                                       std::vector<BigFloat>* derivs = nullptr) {
    TrapezoidGeometry g(spec);
    const long P = eps.precision();
    const BigFloat omega(g.omega, P), alpha(g.alpha, P);
    std::vector<BigFloat> L;
    L.reserve(spec.signs.size() + 1);
    if (derivs) derivs->assign(1, BigFloat(0L, P));
    BigFloat prefix(0L, P);
    long c = 0;
    for (std::size_t i = 0; i <= spec.signs.size(); ++i) {
        if (i > 0) {
            c += spec.signs[i - 1];
            prefix = spec.signs[i - 1] > 0 ? prefix + alpha + eps : prefix + alpha - eps;
        }
        BigFloat arg = omega - prefix;
        if (arg.sign() <= 0) throw DomainError("log argument Omega - A_" + std::to_string(i) + " is not positive");
        L.push_back(ln(arg));
        if (derivs && i > 0) derivs->push_back(BigFloat(-c, P) / arg);
    }
    return L;
}

}  // namespace detail

/// ln Phi(eps) = sum_i s_i [ln(Omega - A_i) - ln(Omega - A_{i-1})], at the precision of eps.
inline BigFloat phi_log(const TrapezoidCutSpec& spec, const BigFloat& eps) {
    validate_spec(spec);
    auto L = detail::apex_logs(spec, eps);
    BigFloat total(0L, eps.precision());
    for (std::size_t i = 1; i < L.size(); ++i)
        total = spec.signs[i - 1] > 0 ? total + (L[i] - L[i - 1]) : total - (L[i] - L[i - 1]);
    return total;
}

/// d/deps of phi_log.
inline BigFloat phi_log_derivative(const TrapezoidCutSpec& spec, const BigFloat& eps) {
    validate_spec(spec);
    std::vector<BigFloat> dL;
    detail::apex_logs(spec, eps, &dL);
    BigFloat total(0L, eps.precision());
    for (std::size_t i = 1; i < dL.size(); ++i)
        total = spec.signs[i - 1] > 0 ? total + (dL[i] - dL[i - 1]) : total - (dL[i] - dL[i - 1]);
    return total;
}

struct SolveResult {
    BigFloat epsilon;
    BigFloat residual;  ///< |phi_log| at epsilon
    int iterations = 0; ///< bisection plus Newton steps
    int newton_steps = 0;
    BigFloat bracket_lo, bracket_hi;
    long precision = 0;
};

/**
 * Root of phi_log on the admissible interval |eps| < alpha. The bracket
 * starts at [-alpha/2, alpha/2]; without a sign change it is widened by
 * scanning outwards on both sides up to alpha - 2^-20, taking the sign change
 * nearest to zero. Bisection runs until |phi_log| <= 2^(-P/2), then at most
 * eight Newton steps polish the root, each kept only if it lowers the residual.
 */
inline SolveResult solve_epsilon(const TrapezoidCutSpec& spec) {
    validate_spec(spec);
    const long P = spec.bits();
    TrapezoidGeometry g(spec);
    const BigFloat alpha(g.alpha, P);
    const BigFloat half = alpha / 2;
    const BigFloat edge = alpha - exp2i(-20, P);
    const BigFloat tol = exp2i(-P / 2, P);

    struct Sample {
        BigFloat x, f;
        bool ok;
    };
    auto sample = [&](const BigFloat& x) -> Sample {
        try {
            return {x, phi_log(spec, x), true};
        } catch (const DomainError&) {
            return {x, BigFloat(0L, P), false};
        }
    };
    auto opposite = [](const Sample& a, const Sample& b) { return a.ok && b.ok && a.f.sign() * b.f.sign() <= 0; };

    SolveResult r;
    r.precision = P;
    Sample lo = sample(-half), hi = sample(half);
    bool found = opposite(lo, hi);
    if (!found) {
        constexpr int steps = 32;
        const BigFloat stride = (edge - half) / steps;
        Sample prev_pos = hi, prev_neg = lo;
        for (int j = 1; j <= steps && !found; ++j) {
            BigFloat reach = half + stride * static_cast<long>(j);
            Sample pos = sample(reach);
            if (opposite(prev_pos, pos)) {
                lo = prev_pos;
                hi = pos;
                found = true;
                break;
            }
            Sample neg = sample(-reach);
            if (opposite(neg, prev_neg)) {
                lo = neg;
                hi = prev_neg;
                found = true;
                break;
            }
            prev_pos = pos;
            prev_neg = neg;
        }
    }
    if (!found) throw NoBracket("ln Phi has no sign change on the admissible interval for " + spec.signs.str());
    r.bracket_lo = lo.x;
    r.bracket_hi = hi.x;

    Sample best = abs(lo.f) < abs(hi.f) ? lo : hi;
    const int max_bisections = 4 * static_cast<int>(P);
    while (abs(best.f) > tol && r.iterations < max_bisections) {
        Sample mid = sample((lo.x + hi.x) / 2);
        ++r.iterations;
        if (!mid.ok) break;
        if (mid.f.sign() == 0) {
            best = mid;
            break;
        }
        if (mid.f.sign() == lo.f.sign())
            lo = mid;
        else
            hi = mid;
        best = mid;
    }

    for (int k = 0; k < 8 && !best.f.is_zero(); ++k) {
        BigFloat d = phi_log_derivative(spec, best.x);
        if (d.is_zero()) break;
        Sample next = sample(best.x - best.f / d);
        ++r.iterations;
        ++r.newton_steps;
        if (!next.ok || !(abs(next.f) < abs(best.f))) break;
        best = next;
    }
    r.epsilon = best.x;
    r.residual = abs(best.f);
    if (r.residual > tol) throw NoBracket("bisection stalled above the residual target for " + spec.signs.str());
    return r;
}

struct TrapezoidCut {
    DissectionFile file;
    SolveResult solve;
    Metrics<BigFloat> metrics;
    LegalityReport legality;
    BigFloat top_param_unsnapped, bottom_param_unsnapped;
};

/**
 * Node ids: 0 = (0,0), 1 = (1,0), 2 = (1,1), 3 = (0,1), 4 = (1, 1-2T); the
 * interior chain nodes follow in creation order. Faces 0..n-2 are the cut
 * triangles in step order, face n-1 is the top right triangle.
 */
inline TrapezoidCut build_trapezoid_cut(const TrapezoidCutSpec& spec, const SolveResult& solved) {
    validate_spec(spec);
    const long P = solved.precision > 0 ? solved.precision : spec.bits();
    TrapezoidGeometry g(spec);
    const BigFloat eps = with_precision(solved.epsilon, P);
    const BigFloat apex(g.apex_x, P);
    auto on_ray = [&](const BigFloat& t, bool top) {
        return Point<BigFloat>{apex * (1L - t), top ? t : BigFloat(0L, P)};
    };
    auto ratios = ray_ratios(spec, eps);

    TrapezoidCut out;
    AbstractDissection& d = out.file.dissection;
    FramedMap<BigFloat> phi;
    auto exact = [&](long x, long y) { return Point<BigFloat>{BigFloat(x, P), BigFloat(y, P)}; };
    phi.coords = {exact(0, 0), exact(1, 0), exact(1, 1), exact(0, 1),
                  Point<BigFloat>{BigFloat(1L, P), BigFloat(g.final_param, P)}};
    const NodeId P0 = 0, Q = 1, U = 2, S = 3, R = 4;

    std::size_t last_plus = 0, last_minus = 0;
    for (std::size_t i = 0; i < spec.signs.size(); ++i) (spec.signs[i] > 0 ? last_plus : last_minus) = i;

    BigFloat t(1L, P), u(1L, P);
    NodeId top = S, bottom = P0;
    std::vector<NodeId> top_chain, bottom_chain;
    for (std::size_t i = 0; i < spec.signs.size(); ++i) {
        const bool plus = spec.signs[i] > 0;
        BigFloat& param = plus ? t : u;
        param = param * ratios[i];
        NodeId fresh;
        if (plus && i == last_plus) {
            fresh = R;
        } else if (!plus && i == last_minus) {
            fresh = Q;
        } else {
            fresh = phi.size();
            phi.coords.push_back(on_ray(param, plus));
            (plus ? top_chain : bottom_chain).push_back(fresh);
        }
        NodeId& moving = plus ? top : bottom;
        d.triangles.push_back({moving, fresh, plus ? bottom : top});
        moving = fresh;
    }
    out.top_param_unsnapped = t;
    out.bottom_param_unsnapped = u;
    const BigFloat target(g.final_param, P);
    const BigFloat snap_tol = exp2i(-P / 4, P);
    if (abs(t - target) > snap_tol || abs(u - target) > snap_tol)
        throw SnapFailure("final ray parameters " + t.str(20) + ", " + u.str(20) + " miss " + target.str(20));

    d.triangles.push_back({S, R, U});
    d.node_count = phi.size();
    d.boundary = {P0};
    d.boundary.insert(d.boundary.end(), bottom_chain.begin(), bottom_chain.end());
    d.boundary.insert(d.boundary.end(), {Q, R, U, S});
    d.corners = {P0, Q, U, S};
    d.polygon = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1), Rational(1)},
                 {Rational(0), Rational(1)}};
    d.area = Rational(1);
    orient_triangles(d, phi);
    d.collinear = build_reduced_collinearity(d, {SideChain{d.triangles.size() - 1, S, R, top_chain}});

    out.metrics = metrics(d, phi);
    out.legality = check_legality(d, phi);
    out.solve = solved;
    out.file.precision_bits = P;
    out.file.metadata["construction"] = "trapezoid";
    out.file.metadata["signs"] = spec.signs.str();
    out.file.metadata["top_area"] = spec.top().str();
    out.file.metadata["epsilon"] = eps.str();
    out.file.map = std::move(phi);
    return out;
}

inline TrapezoidCut build_trapezoid_cut(const TrapezoidCutSpec& spec) {
    return build_trapezoid_cut(spec, solve_epsilon(spec));
}

}  // namespace equidiss
