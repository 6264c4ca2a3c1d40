#pragma once

/**
 * @file types.hpp
 * @brief Combinatorial dissection data and coordinate assignments.
 *
 * An AbstractDissection is the combinatorial type: node count, the boundary
 * cycle B (counterclockwise), the polygon corners C (a subsequence of B),
 * the triangles T (each listed counterclockwise) and a reduced collinearity
 * system L. Every triple of L is stored with its geometrically middle node
 * in the second slot and in the orientation of the corresponding face of
 * the simplicial graph, so that sum_signed_areas telescopes to the polygon
 * area for every framed map.
 */

#include <array>
#include <cstddef>
#include <vector>

#include "equidiss/numerics/rational.hpp"

namespace equidiss {

using NodeId = std::size_t;
using Triple = std::array<NodeId, 3>;

template <class S>
struct Point {
    S x{};
    S y{};

    friend bool operator==(const Point&, const Point&) = default;
};

struct AbstractDissection {
    std::size_t node_count = 0;
    std::vector<NodeId> boundary;
    std::vector<NodeId> corners;
    std::vector<Triple> triangles;
    std::vector<Triple> collinear;
    std::vector<Point<Rational>> polygon;  ///< target of corners[i] is polygon[i]
    Rational area;

    std::size_t n() const { return triangles.size(); }
    std::size_t K() const { return corners.size(); }
    std::size_t ell() const { return collinear.size(); }
};

/// Assignment of plane coordinates to nodes, indexed by NodeId.
template <class S>
struct FramedMap {
    std::vector<Point<S>> coords;

    const Point<S>& operator[](NodeId v) const { return coords[v]; }
    Point<S>& operator[](NodeId v) { return coords[v]; }
    std::size_t size() const { return coords.size(); }
};

}  // namespace equidiss
