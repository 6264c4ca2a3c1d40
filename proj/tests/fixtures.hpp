#pragma once

// Small rational dissections of the unit square used across the test suites.

#include <string>
#include <vector>

#include "equidiss/dissection/collinearity.hpp"
#include "equidiss/dissection/geometry.hpp"
#include "equidiss/dissection/types.hpp"
#include "equidiss/dissection/validate.hpp"

namespace fixtures {

using equidiss::AbstractDissection;
using equidiss::FramedMap;
using equidiss::NodeId;
using equidiss::Point;
using equidiss::Rational;
using equidiss::SideChain;
using equidiss::Triple;

struct Fixture {
    std::string name;
    AbstractDissection d;
    FramedMap<Rational> phi;
};

inline Rational q(long p, long r = 1) { return Rational(p, r); }

inline Fixture make(std::string name, std::vector<Point<Rational>> pts, std::vector<NodeId> boundary,
                    std::vector<NodeId> corners, std::vector<Triple> triangles,
                    std::vector<SideChain> chains = {}) {
    Fixture f;
    f.name = std::move(name);
    f.phi.coords = std::move(pts);
    f.d.node_count = f.phi.size();
    f.d.boundary = std::move(boundary);
    f.d.corners = std::move(corners);
    f.d.triangles = std::move(triangles);
    for (NodeId c : f.d.corners) f.d.polygon.push_back(f.phi[c]);
    f.d.area = equidiss::detail::shoelace(f.d.polygon);
    equidiss::orient_triangles(f.d, f.phi);
    f.d.collinear = equidiss::build_reduced_collinearity(f.d, chains);
    return f;
}

/// Three triangles, the bottom side halved at (1/2, 0).
inline Fixture three_triangles() {
    return make("three", {{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}, {q(1, 2), q(0)}},
                {0, 4, 1, 2, 3}, {0, 1, 2, 3}, {{0, 4, 2}, {4, 1, 2}, {0, 2, 3}});
}

/// Five triangles with side nodes (2/3,1/3), (5/6,2/3) on the segment (1/2,0)-(1,1).
/// Nodes: c1..c4 = 0..3, b1 = 4, i1 = 5, i2 = 6.
inline Fixture five_with_chain() {
    return make("five-chain",
                {{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}, {q(1, 2), q(0)},
                 {q(2, 3), q(1, 3)}, {q(5, 6), q(2, 3)}},
                {0, 4, 1, 2, 3}, {0, 1, 2, 3}, {{0, 4, 3}, {4, 1, 2}, {3, 4, 5}, {3, 5, 6}, {3, 6, 2}},
                {SideChain{1, 4, 2, {5, 6}}});
}

/// Three triangles with a side node e = (1, 1/2) on the right side.
inline Fixture right_side_node() {
    return make("right-node",
                {{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}, {q(1), q(1, 2)}},
                {0, 1, 4, 2, 3}, {0, 1, 2, 3}, {{0, 1, 4}, {0, 4, 3}, {4, 2, 3}});
}

/// Four triangles with two bottom side nodes e = (1/2,0), f = (3/4,0).
inline Fixture four_bottom_nodes() {
    return make("four-bottom",
                {{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}, {q(1, 2), q(0)}, {q(3, 4), q(0)}},
                {0, 4, 5, 1, 2, 3}, {0, 1, 2, 3}, {{0, 4, 3}, {4, 2, 3}, {4, 5, 2}, {5, 1, 2}});
}

/// Four triangles around the centre; all areas 1/4.
inline Fixture four_center() {
    return make("four-center",
                {{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}, {q(1, 2), q(1, 2)}},
                {0, 1, 2, 3}, {0, 1, 2, 3}, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
}

/// The square cut along a diagonal.
inline Fixture two_triangles() {
    return make("two", {{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(0), q(1)}}, {0, 1, 2, 3},
                {0, 1, 2, 3}, {{0, 1, 2}, {0, 2, 3}});
}

/// Five triangles on six nodes: one interior node and a side node on the right side.
inline Fixture five_six_nodes() {
    return make("five-six",
                {{q(0), q(1)}, {q(1), q(1)}, {q(2, 5), q(3, 5)}, {q(0), q(0)}, {q(1), q(2, 5)}, {q(1), q(0)}},
                {3, 5, 4, 1, 0}, {3, 5, 1, 0}, {{0, 3, 2}, {0, 2, 1}, {1, 2, 4}, {2, 3, 4}, {3, 5, 4}});
}

inline std::vector<Fixture> all() {
    return {three_triangles(), five_with_chain(), right_side_node(), four_bottom_nodes(),
            four_center(),     two_triangles(),   five_six_nodes()};
}

}  // namespace fixtures
