#pragma once

/**
 * @file add_two.hpp
 * @brief From n to n+2 triangles: glue a 2/n-wide strip, then rescale.
 *
 * The strip [1, 1+2/n] x [0,1] is split along its diagonal into two
 * triangles of area 1/n and the union is squeezed horizontally by n/(n+2).
 * Range scales by n/(n+2), RMS by (n/(n+2))^(3/2).
 */

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "equidiss/dissection/collinearity.hpp"
#include "equidiss/dissection/geometry.hpp"
#include "equidiss/dissection/io.hpp"
#include "equidiss/errors.hpp"

namespace equidiss {

namespace detail {

inline std::size_t corner_at(const AbstractDissection& d, long x, long y) {
    for (std::size_t i = 0; i < d.polygon.size(); ++i)
        if (d.polygon[i] == Point<Rational>{Rational(x), Rational(y)}) return i;
    throw PreconditionFailed("input is not a dissection of the unit square");
}

inline void require_unit_square(const AbstractDissection& d) {
    if (d.polygon.size() != 4 || d.area != Rational(1)) throw PreconditionFailed("input is not the unit square");
    corner_at(d, 0, 0);
    corner_at(d, 0, 1);
    std::size_t q = corner_at(d, 1, 0), u = corner_at(d, 1, 1);
    if ((q + 1) % 4 != u) throw PreconditionFailed("unit square corners are not counterclockwise");
}

// Relative comparison with an absolute floor; exact for rationals.
template <class S>
bool close(const S& a, const S& b, const S& tol) {
    if constexpr (ScalarTraits<S>::exact) {
        return a == b;
    } else {
        S diff = abs_scalar(a - b);
        S scale = abs_scalar(b);
        return !(diff > tol + tol * scale);
    }
}

template <class S>
FramedMap<S> add_two_map(const AbstractDissection& d, const AbstractDissection& e, const FramedMap<S>& phi) {
    const S& like = phi.coords.at(0).x;
    const long n = static_cast<long>(d.n());
    FramedMap<S> out = phi;
    const Rational right = Rational(1) + Rational(2, n);
    out.coords.push_back({scalar_like<S>(right, like), scalar_like<S>(0, like)});
    out.coords.push_back({scalar_like<S>(right, like), scalar_like<S>(1, like)});
    const S squeeze = scalar_like<S>(Rational(n, n + 2), like);
    for (auto& p : out.coords) p.x = p.x * squeeze;
    for (std::size_t i = 0; i < e.corners.size(); ++i)
        out[e.corners[i]] = {scalar_like<S>(e.polygon[i].x, like), scalar_like<S>(e.polygon[i].y, like)};
    return out;
}

}  // namespace detail

struct AddTwoCheck {
    double range_ratio = 0;  ///< measured range(D')/range(D)
    double rms_ratio = 0;    ///< measured RMS(D')/RMS(D)
};

/**
 * New nodes: Y = N at (1,0) and X = N+1 at (1,1); the old corners (1,0) and
 * (1,1) become side nodes of the bottom and top sides, and the old right
 * side chain now lies on the side of the new triangle (old (1,0), X, old (1,1)).
 */
inline DissectionFile add_two(const DissectionFile& in, AddTwoCheck* check = nullptr) {
    const AbstractDissection& d = in.dissection;
    detail::require_unit_square(d);
    auto legal = std::visit([&](const auto& m) { return check_legality(d, m); }, in.map);
    if (!legal.legal)
        throw PreconditionFailed("input dissection is not legal: " +
                                 (legal.reasons.empty() ? std::string() : legal.reasons.front()));

    const std::size_t iq = detail::corner_at(d, 1, 0), iu = detail::corner_at(d, 1, 1);
    const NodeId Q = d.corners[iq], U = d.corners[iu];
    const NodeId Y = d.node_count, X = d.node_count + 1;
    const auto right_chain = polygon_side_chains(d)[iq];
    const std::set<NodeId> on_boundary(d.boundary.begin(), d.boundary.end());

    DissectionFile out;
    AbstractDissection& e = out.dissection;
    e.node_count = d.node_count + 2;
    e.polygon = d.polygon;
    e.area = d.area;
    e.corners = d.corners;
    e.corners[iq] = Y;
    e.corners[iu] = X;
    e.triangles = d.triangles;
    e.triangles.push_back({Q, Y, X});
    e.triangles.push_back({Q, X, U});

    // Boundary: replace the stretch strictly between Q and U by Y, X.
    std::vector<NodeId> B = d.boundary;
    std::rotate(B.begin(), std::find(B.begin(), B.end(), Q), B.end());
    auto pu = std::find(B.begin(), B.end(), U);
    e.boundary = {Q, Y, X};
    e.boundary.insert(e.boundary.end(), pu, B.end());
    std::rotate(e.boundary.begin(), std::find(e.boundary.begin(), e.boundary.end(), e.corners[0]), e.boundary.end());

    std::vector<Triple> kept;
    for (const auto& t : d.collinear)
        if (!(on_boundary.count(t[0]) && on_boundary.count(t[1]) && on_boundary.count(t[2]))) kept.push_back(t);
    auto fresh = build_reduced_collinearity(e, {SideChain{e.triangles.size() - 1, Q, U, right_chain}});
    e.collinear = kept;
    e.collinear.insert(e.collinear.end(), fresh.begin(), fresh.end());

    out.precision_bits = in.precision_bits;
    out.metadata = in.metadata;
    out.metadata["add_two"] = in.metadata.value("add_two", 0) + 1;

    const long n = static_cast<long>(d.n());
    std::visit(
        [&](const auto& m) {
            using S = std::decay_t<decltype(m.coords[0].x)>;
            auto m2 = detail::add_two_map(d, e, m);
            auto before = metrics(d, m);
            auto after = metrics(e, m2);
            const S& like = m.coords.at(0).x;
            S tol = scalar_like<S>(0, like);
            if constexpr (!ScalarTraits<S>::exact) tol = exp2i(16 - in.precision_bits, in.precision_bits);
            const S f = scalar_like<S>(Rational(n, n + 2), like);
            if (!detail::close(after.range, before.range * f, tol))
                throw Error("range did not scale by n/(n+2)");
            auto fr = ScalarTraits<S>::to_real(f, in.precision_bits);
            auto rms_expected = before.rms * fr * sqrt(fr);
            const long rp = rms_expected.precision();
            const BigFloat floor = exp2i(8 - rp, rp) * static_cast<long>(e.n());
            if (abs(after.rms - rms_expected) > abs(rms_expected) * exp2i(16 - rp, rp) + floor)
                throw Error("RMS did not scale by (n/(n+2))^(3/2)");
            if (check) {
                check->range_ratio = before.range.is_zero() ? 0.0
                                                            : ScalarTraits<S>::to_double(after.range / before.range);
                check->rms_ratio = before.rms.is_zero() ? 0.0 : (after.rms / before.rms).to_double();
            }
            auto rep = check_legality(e, m2);
            if (!rep.legal) throw Error("add_two produced an illegal map: " + rep.reasons.front());
            out.map = std::move(m2);
        },
        in.map);
    return out;
}

}  // namespace equidiss
