#pragma once

/**
 * @file geometry.hpp
 * @brief Signed areas, the area invariant, legality and range/RMS metrics.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "equidiss/dissection/types.hpp"
#include "equidiss/errors.hpp"
#include "equidiss/numerics/scalar.hpp"

namespace equidiss {

/// Half the orientation determinant; positive iff (p1, p2, p3) is counterclockwise.
template <class S>
S signed_area(const Point<S>& p1, const Point<S>& p2, const Point<S>& p3) {
    return ((p2.x - p1.x) * (p3.y - p1.y) - (p3.x - p1.x) * (p2.y - p1.y)) / 2;
}

template <class S>
S signed_area(const FramedMap<S>& phi, const Triple& t) {
    return signed_area(phi[t[0]], phi[t[1]], phi[t[2]]);
}

template <class S>
std::vector<S> triangle_areas(const AbstractDissection& d, const FramedMap<S>& phi) {
    std::vector<S> out;
    out.reserve(d.triangles.size());
    for (const auto& t : d.triangles) out.push_back(signed_area(phi, t));
    return out;
}

template <class S>
std::vector<S> collinear_areas(const AbstractDissection& d, const FramedMap<S>& phi) {
    std::vector<S> out;
    out.reserve(d.collinear.size());
    for (const auto& t : d.collinear) out.push_back(signed_area(phi, t));
    return out;
}

/// Reorders each triangle of T counterclockwise with respect to phi.
template <class S>
void orient_triangles(AbstractDissection& d, const FramedMap<S>& phi) {
    for (auto& t : d.triangles)
        if (signed_area(phi, t) < scalar_like<S>(0, phi[t[0]].x)) std::swap(t[1], t[2]);
}

/// Sum over T and L of signed areas; equals E for every framed map.
template <class S>
S sum_signed_areas(const AbstractDissection& d, const FramedMap<S>& phi) {
    S total = scalar_like<S>(0, phi.coords.at(0).x);
    for (const auto& t : d.triangles) total = total + signed_area(phi, t);
    for (const auto& t : d.collinear) total = total + signed_area(phi, t);
    return total;
}

/// Working precision of a map in bits (53 for double; nominal for rational).
template <class S>
long map_precision(const FramedMap<S>& phi) {
    if (phi.coords.empty()) return ScalarTraits<S>::precision(S{});
    long p = ScalarTraits<S>::precision(phi.coords[0].x);
    for (const auto& q : phi.coords)
        p = std::min({p, ScalarTraits<S>::precision(q.x), ScalarTraits<S>::precision(q.y)});
    return p;
}

struct LegalityReport {
    bool legal = true;
    std::vector<std::string> reasons;
};

/**
 * Legal iff the corners sit on the polygon corners, every collinearity
 * triple is degenerate, and every triangle of T has positive area. For
 * inexact maps with precision P the checks use tau_pos = 2^(8-P) and
 * tau_area = 2^(8-P) * n; rational maps are checked exactly.
 */
template <class S>
LegalityReport check_legality(const AbstractDissection& d, const FramedMap<S>& phi) {
    LegalityReport rep;
    auto fail = [&](std::string s) {
        rep.legal = false;
        rep.reasons.push_back(std::move(s));
    };
    if (phi.size() != d.node_count) {
        fail("map has " + std::to_string(phi.size()) + " points for " + std::to_string(d.node_count) +
             " nodes");
        return rep;
    }
    const S& like = phi.coords.at(0).x;
    S tau_pos = scalar_like<S>(0, like);
    S tau_area = scalar_like<S>(0, like);
    if constexpr (!ScalarTraits<S>::exact) {
        long P = map_precision(phi);
        Rational unit = P - 8 >= 0 ? Rational(1) / pow(Rational(2), static_cast<unsigned>(P - 8))
                                   : pow(Rational(2), static_cast<unsigned>(8 - P));
        tau_pos = scalar_like<S>(unit, like);
        tau_area = scalar_like<S>(unit * Rational(static_cast<long>(d.n())), like);
    }

    for (std::size_t i = 0; i < d.corners.size() && i < d.polygon.size(); ++i) {
        const auto& p = phi[d.corners[i]];
        S tx = scalar_like<S>(d.polygon[i].x, like);
        S ty = scalar_like<S>(d.polygon[i].y, like);
        if (abs_scalar(p.x - tx) > tau_pos || abs_scalar(p.y - ty) > tau_pos)
            fail("corner node " + std::to_string(d.corners[i]) + " is not at polygon corner " +
                 std::to_string(i));
    }
    for (std::size_t i = 0; i < d.collinear.size(); ++i) {
        S a = signed_area(phi, d.collinear[i]);
        if (abs_scalar(a) > tau_area)
            fail("collinearity triple " + std::to_string(i) + " has area " + ScalarTraits<S>::str(a));
    }
    for (std::size_t i = 0; i < d.triangles.size(); ++i) {
        S a = signed_area(phi, d.triangles[i]);
        if (a < scalar_like<S>(0, like))
            fail("triangle " + std::to_string(i) + " has negative signed area " + ScalarTraits<S>::str(a));
        else if (!(a > tau_area))
            fail("triangle " + std::to_string(i) + " is degenerate");
    }
    return rep;
}

/// Lambda(R) = sqrt(log2(1/R)) / log2(n), defined for 0 < R < 1 and n >= 2.
inline std::optional<double> lambda_metric(double log2_inv_range, std::size_t n) {
    if (!(log2_inv_range > 0) || n < 2) return std::nullopt;
    return std::sqrt(log2_inv_range) / std::log2(static_cast<double>(n));
}

template <class S>
std::optional<double> lambda_of(const S& range, std::size_t n) {
    if (!(range > scalar_like<S>(0, range))) return std::nullopt;
    if constexpr (std::is_same_v<S, double>) {
        return lambda_metric(-std::log2(range), n);
    } else {
        BigFloat r = ScalarTraits<S>::to_real(range, kDefaultPrecision);
        return lambda_metric(-log2(r).to_double(), n);
    }
}

template <class S>
struct Metrics {
    S range;
    typename ScalarTraits<S>::Real rms;
    S ssr;
    std::optional<double> lambda;
};

template <class S>
Metrics<S> metrics(const std::vector<S>& areas, const S& E) {
    if (areas.empty()) throw PreconditionFailed("metrics of an empty area list");
    const S& like = areas.front();
    const long n = static_cast<long>(areas.size());
    auto [lo, hi] = std::minmax_element(areas.begin(), areas.end(),
                                        [](const S& a, const S& b) { return a < b; });
    S range = *hi - *lo;
    S mean = E / scalar_like<S>(n, like);
    S ssr = scalar_like<S>(0, like);
    for (const auto& a : areas) ssr = ssr + (a - mean) * (a - mean);
    auto rms = sqrt_real(ScalarTraits<S>::to_real(ssr / scalar_like<S>(n, like),
                                                  ScalarTraits<S>::precision(like)));
    return Metrics<S>{range, rms, ssr, lambda_of(range, areas.size())};
}

template <class S>
Metrics<S> metrics(const AbstractDissection& d, const FramedMap<S>& phi) {
    return metrics(triangle_areas(d, phi), scalar_like<S>(d.area, phi.coords.at(0).x));
}

}  // namespace equidiss
