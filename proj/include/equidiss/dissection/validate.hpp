#pragma once

/**
 * @file validate.hpp
 * @brief Invariant checks for abstract dissections.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "equidiss/dissection/collinearity.hpp"
#include "equidiss/dissection/types.hpp"

namespace equidiss {

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline Rational shoelace(const std::vector<Point<Rational>>& poly) {
    Rational twice(0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % poly.size()];
        twice += p.x * q.y - q.x * p.y;
    }
    return twice / Rational(2);
}

// Connectivity of `adj` after deleting r1 and r2.
inline bool connected_without(const std::vector<std::vector<NodeId>>& adj, NodeId r1, NodeId r2) {
    const std::size_t V = adj.size();
    std::vector<char> seen(V, 0);
    seen[r1] = seen[r2] = 1;
    NodeId start = V;
    for (NodeId v = 0; v < V; ++v)
        if (!seen[v]) { start = v; break; }
    if (start == V) return true;
    std::vector<NodeId> stack{start};
    seen[start] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId w : adj[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    std::size_t expected = V - (r1 == r2 ? 1 : 2);
    return reached == expected;
}

}  // namespace detail

/// Number of side nodes read off the combinatorics: nodes of B that are not
/// corners, plus interior nodes that are a corner of one fewer triangle than
/// their skeleton degree.
inline std::size_t count_side_nodes(const AbstractDissection& d) {
    std::set<NodeId> on_boundary(d.boundary.begin(), d.boundary.end());
    std::size_t count = d.boundary.size() >= d.corners.size() ? d.boundary.size() - d.corners.size() : 0;
    auto adj = skeleton_adjacency(d);
    std::vector<std::size_t> tri_deg(d.node_count, 0);
    for (const auto& t : d.triangles)
        for (NodeId v : t)
            if (v < d.node_count) ++tri_deg[v];
    for (NodeId v = 0; v < d.node_count; ++v)
        if (!on_boundary.count(v) && tri_deg[v] + 1 == adj[v].size()) ++count;
    return count;
}

/// Checks all invariants; returns the list of violated ones (empty when valid).
inline ValidationReport validate_abstract(const AbstractDissection& d) {
    ValidationReport r;
    auto fail = [&](std::string s) { r.violations.push_back(std::move(s)); };
    const std::size_t N = d.node_count;
    const std::size_t n = d.n(), K = d.K(), ell = d.ell();

    bool ids_ok = true;
    auto check_ids = [&](const std::vector<NodeId>& ids, const char* what) {
        for (NodeId v : ids)
            if (v >= N) {
                fail(std::string(what) + " references unknown node " + std::to_string(v));
                ids_ok = false;
            }
    };
    check_ids(d.boundary, "boundary");
    check_ids(d.corners, "corners");
    for (const auto& t : d.triangles) {
        check_ids({t[0], t[1], t[2]}, "triangle");
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) fail("triangle with repeated node");
    }
    for (const auto& t : d.collinear) {
        check_ids({t[0], t[1], t[2]}, "collinearity triple");
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) fail("collinearity triple with repeated node");
    }
    if (!ids_ok) return r;

    if (n == 0) fail("no triangles");
    if (K < 3) fail("fewer than three corners");
    if (d.polygon.size() != K) fail("polygon corner count differs from corner list");

    std::set<NodeId> bset(d.boundary.begin(), d.boundary.end());
    if (bset.size() != d.boundary.size()) fail("boundary cycle repeats a node");

    // Corners in cyclic order along B.
    {
        std::vector<std::size_t> pos;
        for (NodeId c : d.corners) {
            auto it = std::find(d.boundary.begin(), d.boundary.end(), c);
            if (it == d.boundary.end()) {
                fail("corner " + std::to_string(c) + " is not on the boundary cycle");
                pos.clear();
                break;
            }
            pos.push_back(static_cast<std::size_t>(it - d.boundary.begin()));
        }
        if (!pos.empty()) {
            auto lo = std::min_element(pos.begin(), pos.end()) - pos.begin();
            std::rotate(pos.begin(), pos.begin() + lo, pos.end());
            if (!std::is_sorted(pos.begin(), pos.end()) ||
                std::adjacent_find(pos.begin(), pos.end()) != pos.end())
                fail("corners do not occur in cyclic order along the boundary");
        }
    }

    if (2 * N != n + K + ell + 2)
        fail("count identity violated: 2N=" + std::to_string(2 * N) +
             " but n+K+l+2=" + std::to_string(n + K + ell + 2));
    if (ell + K > n + 2) fail("l exceeds n-K+2");

    std::vector<char> used(N, 0);
    for (const auto& t : d.triangles)
        for (NodeId v : t) used[v] = 1;
    for (NodeId v = 0; v < N; ++v)
        if (!used[v]) fail("node " + std::to_string(v) + " is not a corner of any triangle");

    std::size_t side_nodes = count_side_nodes(d);
    if (side_nodes != ell)
        fail("l=" + std::to_string(ell) + " differs from the side-node count " + std::to_string(side_nodes));

    auto edges = skeleton_edges(d);
    for (std::size_t i = 0; i < d.boundary.size(); ++i) {
        NodeId u = d.boundary[i], v = d.boundary[(i + 1) % d.boundary.size()];
        if (!edges.count(u < v ? std::make_pair(u, v) : std::make_pair(v, u)))
            fail("boundary step " + std::to_string(u) + "-" + std::to_string(v) + " is not a skeleton edge");
    }

    // Euler: the simplicial graph has N vertices, n+l+1 faces, hence N+n+l-1 edges.
    {
        std::set<std::pair<NodeId, NodeId>> simplicial;
        auto add = [&](const Triple& t) {
            for (int k = 0; k < 3; ++k) {
                NodeId u = t[k], v = t[(k + 1) % 3];
                simplicial.insert(u < v ? std::make_pair(u, v) : std::make_pair(v, u));
            }
        };
        for (const auto& t : d.triangles) add(t);
        for (const auto& t : d.collinear) add(t);
        if (simplicial.size() + 1 != N + n + ell)
            fail("simplicial graph edge count " + std::to_string(simplicial.size()) +
                 " contradicts Euler's formula (expected " + std::to_string(N + n + ell - 1) + ")");
    }

    // Internal 3-connectivity: skeleton plus an apex joined to all of B.
    {
        auto adj = skeleton_adjacency(d);
        adj.emplace_back();
        NodeId apex = N;
        for (NodeId b : d.boundary) {
            adj[apex].push_back(b);
            adj[b].push_back(apex);
        }
        bool ok = adj.size() >= 4;
        for (NodeId u = 0; ok && u < adj.size(); ++u)
            for (NodeId v = u + 1; ok && v < adj.size(); ++v)
                if (!detail::connected_without(adj, u, v)) {
                    fail("apex-augmented skeleton is not 3-connected (separating pair " +
                         std::to_string(u) + "," + std::to_string(v) + ")");
                    ok = false;
                }
    }

    if (d.polygon.size() == K && K >= 3) {
        Rational e = detail::shoelace(d.polygon);
        if (e.sign() <= 0) fail("polygon corners are not counterclockwise");
        if (e != d.area) fail("declared area " + d.area.str() + " differs from polygon area " + e.str());
    }
    return r;
}

}  // namespace equidiss
