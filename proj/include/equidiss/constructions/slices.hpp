#pragma once

/**
 * @file slices.hpp
 * @brief The slice family for n = 1 (mod 4), with range O(1/n^5).
 *
 * Below the top right triangle ((0,1),(1,1),(1,1-2/n)) the trapezoid is cut
 * into (n-1)/4 vertical slices of area 4/n. Each slice [x, x'] with top
 * corners Lt, Rt on the hypotenuse and bottom corners Lb, Rb carries four
 * triangles: T1 = (Lb, B, Lt) of area exactly 1/n, T2 = (Lt, B, M),
 * T3 = (M, B, Rt) with M the midpoint of Lt Rt, and T4 = (B, Rb, Rt).
 */

#include <cstddef>
#include <vector>

#include "equidiss/dissection/collinearity.hpp"
#include "equidiss/dissection/geometry.hpp"
#include "equidiss/dissection/io.hpp"
#include "equidiss/errors.hpp"
#include "equidiss/numerics/bigfloat.hpp"

namespace equidiss {

struct SliceFamily {
    DissectionFile file;
    Metrics<BigFloat> metrics;
    LegalityReport legality;
};

inline SliceFamily slice_family(std::size_t n, long precision = kDefaultPrecision) {
    if (n < 5 || n % 4 != 1) throw PreconditionFailed("slice family needs n >= 5 with n = 1 (mod 4)");
    const long P = precision;
    const long nl = static_cast<long>(n);
    const BigFloat one(1L, P);
    auto height = [&](const BigFloat& x) { return one - x * 2 / nl; };

    SliceFamily out;
    AbstractDissection& d = out.file.dissection;
    FramedMap<BigFloat> phi;
    auto exact = [&](long x, long y) { return Point<BigFloat>{BigFloat(x, P), BigFloat(y, P)}; };
    const NodeId P0 = 0, Q = 1, U = 2, S = 3, R = 4;
    phi.coords = {exact(0, 0), exact(1, 0), exact(1, 1), exact(0, 1),
                  Point<BigFloat>{one, BigFloat(Rational(nl - 2, nl), P)}};
    auto add = [&](Point<BigFloat> p) {
        phi.coords.push_back(std::move(p));
        return phi.size() - 1;
    };

    const std::size_t slices = (n - 1) / 4;
    std::vector<NodeId> bottom_chain, top_chain;
    BigFloat x(0L, P);
    NodeId lb = P0, lt = S;
    for (std::size_t j = 0; j < slices; ++j) {
        const bool last = j + 1 == slices;
        BigFloat h = height(x);
        // Width w solves w^2 - n h w + 4 = 0; the small root, written stably.
        BigFloat nh = h * nl;
        BigFloat w = BigFloat(8L, P) / (nh + sqrt(nh * nh - 16L));
        BigFloat x2 = x + w;
        if (last) {
            if (abs(x2 - one) > exp2i(-P / 4, P))
                throw SnapFailure("last slice ends at " + x2.str(20) + " instead of 1");
            x2 = one;
        }
        BigFloat b = BigFloat(2L, P) / nh;
        NodeId bn = add({x + b, BigFloat(0L, P)});
        NodeId rb = last ? Q : add({x2, BigFloat(0L, P)});
        NodeId rt = last ? R : add({x2, height(x2)});
        const auto& pl = phi[lt];
        const auto& pr = phi[rt];
        NodeId m = add({(pl.x + pr.x) / 2, (pl.y + pr.y) / 2});

        d.triangles.push_back({lb, bn, lt});
        d.triangles.push_back({lt, bn, m});
        d.triangles.push_back({m, bn, rt});
        d.triangles.push_back({bn, rb, rt});
        bottom_chain.push_back(bn);
        if (!last) bottom_chain.push_back(rb);
        top_chain.push_back(m);
        if (!last) top_chain.push_back(rt);
        x = x2;
        lb = rb;
        lt = rt;
    }
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
    out.file.precision_bits = P;
    out.file.metadata["construction"] = "slices";
    out.file.map = std::move(phi);
    return out;
}

}  // namespace equidiss
