#pragma once

/**
 * @file area_difference.hpp
 * @brief The area difference polynomial pi_D = delta_SSR + delta_L + delta_C.
 *
 * Variables are numbered 2v (x_v) and 2v+1 (y_v) for node v.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "equidiss/adpoly/polynomial.hpp"
#include "equidiss/dissection/geometry.hpp"
#include "equidiss/dissection/types.hpp"

namespace equidiss {

inline std::uint32_t x_var(NodeId v) { return static_cast<std::uint32_t>(2 * v); }
inline std::uint32_t y_var(NodeId v) { return static_cast<std::uint32_t>(2 * v + 1); }

/// Signed area of (a, b, c) as a quadratic polynomial in the node coordinates.
inline SparsePolynomial area_polynomial(const Triple& t) {
    SparsePolynomial p;
    const Rational half(1, 2);
    for (int k = 0; k < 3; ++k) {
        NodeId u = t[k], w = t[(k + 1) % 3];
        auto xu = x_var(u), yu = y_var(u), xw = x_var(w), yw = y_var(w);
        p.add_term(xu < yw ? Monomial{{xu, 1}, {yw, 1}} : Monomial{{yw, 1}, {xu, 1}}, half);
        p.add_term(xw < yu ? Monomial{{xw, 1}, {yu, 1}} : Monomial{{yu, 1}, {xw, 1}}, -half);
    }
    return p;
}

struct AreaDifferenceParts {
    SparsePolynomial ssr;
    SparsePolynomial collinear;
    SparsePolynomial corners;
    SparsePolynomial total() const { return ssr + collinear + corners; }
};

inline AreaDifferenceParts assemble_parts(const AbstractDissection& d) {
    AreaDifferenceParts parts;
    const Rational mean = d.area / Rational(static_cast<long>(d.n()));
    for (const auto& t : d.triangles) {
        SparsePolynomial r = area_polynomial(t) - SparsePolynomial::constant(mean);
        parts.ssr += r * r;
    }
    for (const auto& t : d.collinear) {
        SparsePolynomial a = area_polynomial(t);
        parts.collinear += a * a;
    }
    for (std::size_t i = 0; i < d.corners.size(); ++i) {
        NodeId v = d.corners[i];
        SparsePolynomial dx = SparsePolynomial::variable(x_var(v)) - SparsePolynomial::constant(d.polygon[i].x);
        SparsePolynomial dy = SparsePolynomial::variable(y_var(v)) - SparsePolynomial::constant(d.polygon[i].y);
        parts.corners += dx * dx + dy * dy;
    }
    return parts;
}

/// pi_D over 2N variables.
inline SparsePolynomial assemble(const AbstractDissection& d) { return assemble_parts(d).total(); }

/// Flattens a map into the variable vector (x_0, y_0, x_1, y_1, ...).
template <class S>
std::vector<S> to_variables(const FramedMap<S>& phi) {
    std::vector<S> x;
    x.reserve(2 * phi.size());
    for (const auto& p : phi.coords) {
        x.push_back(p.x);
        x.push_back(p.y);
    }
    return x;
}

template <class S>
struct DeltaTerms {
    S ssr, collinear, corners;
    S total() const { return ssr + collinear + corners; }
};

/// The three penalty terms evaluated straight from their definitions.
template <class S>
DeltaTerms<S> delta_terms(const AbstractDissection& d, const FramedMap<S>& phi) {
    const S& like = phi.coords.at(0).x;
    S mean = scalar_like<S>(d.area, like) / scalar_like<S>(static_cast<long>(d.n()), like);
    DeltaTerms<S> out{scalar_like<S>(0, like), scalar_like<S>(0, like), scalar_like<S>(0, like)};
    for (const auto& t : d.triangles) {
        S r = signed_area(phi, t) - mean;
        out.ssr = out.ssr + r * r;
    }
    for (const auto& t : d.collinear) {
        S a = signed_area(phi, t);
        out.collinear = out.collinear + a * a;
    }
    for (std::size_t i = 0; i < d.corners.size(); ++i) {
        const auto& p = phi[d.corners[i]];
        S dx = p.x - scalar_like<S>(d.polygon[i].x, like);
        S dy = p.y - scalar_like<S>(d.polygon[i].y, like);
        out.corners = out.corners + dx * dx + dy * dy;
    }
    return out;
}

struct StructuralReport {
    std::vector<std::string> failures;
    std::size_t variable_count = 0;
    std::uint32_t degree = 0;
    Rational constant_term;
    Rational max_other_coefficient;
    bool ok() const { return failures.empty(); }
};

/**
 * Degree 4, at most 2n+4 variables, the constant-term and coefficient
 * bounds with b the largest corner coordinate, and integrality of 4 n s^2 p
 * when E and the corners are multiples of 1/s.
 */
inline StructuralReport structural_checks(const SparsePolynomial& p, const AbstractDissection& d, long s) {
    StructuralReport r;
    auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };
    const long n = static_cast<long>(d.n());

    r.variable_count = 2 * d.node_count;
    if (p.variables().size() > r.variable_count) fail("polynomial uses variables beyond the node set");
    if (r.variable_count > static_cast<std::size_t>(2 * n + 4))
        fail("variable count " + std::to_string(r.variable_count) + " exceeds 2n+4");

    r.degree = p.degree();
    if (r.degree != 4) fail("degree is " + std::to_string(r.degree) + ", expected 4");

    Rational b(0);
    for (const auto& c : d.polygon) {
        if (c.x.sign() < 0 || c.y.sign() < 0) fail("corner coordinates must be nonnegative for the bound");
        b = std::max({b, c.x, c.y});
    }
    const Rational E = d.area;
    const Rational En = E / Rational(n);

    r.constant_term = p.constant_term();
    Rational const_bound = E * E / Rational(n) + Rational(2 * n + 4) * b * b;
    if (abs(r.constant_term) > const_bound)
        fail("constant term " + r.constant_term.str() + " exceeds " + const_bound.str());

    Rational coef_bound = std::max({Rational(1), En, Rational(2) * b});
    r.max_other_coefficient = Rational(0);
    for (const auto& [m, c] : p.terms()) {
        if (m.empty()) continue;
        r.max_other_coefficient = std::max(r.max_other_coefficient, abs(c));
    }
    if (r.max_other_coefficient > coef_bound)
        fail("coefficient " + r.max_other_coefficient.str() + " exceeds " + coef_bound.str());

    if (s <= 0) {
        fail("scale s must be positive");
        return r;
    }
    const Rational S(s);
    bool multiples = (E * S).is_integer();
    for (const auto& c : d.polygon) multiples = multiples && (c.x * S).is_integer() && (c.y * S).is_integer();
    if (!multiples) {
        fail("area and corners are not multiples of 1/" + std::to_string(s));
    } else {
        const Rational scale = Rational(4 * n) * S * S;
        for (const auto& [m, c] : p.terms())
            if (!(scale * c).is_integer()) {
                fail("4ns^2 * coefficient " + c.str() + " is not an integer");
                break;
            }
    }
    return r;
}

}  // namespace equidiss
