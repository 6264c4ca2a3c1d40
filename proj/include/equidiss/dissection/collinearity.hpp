#pragma once

/**
 * @file collinearity.hpp
 * @brief Reduced collinearity systems built from per-side node chains.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "equidiss/dissection/types.hpp"
#include "equidiss/errors.hpp"

namespace equidiss {

/// Side nodes lying in the interior of one side of a triangle of T, listed
/// in order from `from` towards `to`.
struct SideChain {
    std::size_t face = 0;
    NodeId from = 0;
    NodeId to = 0;
    std::vector<NodeId> interior;
};

namespace detail {

// Emits the fan of one side. `apex_first` is the endpoint the fan hangs from;
// `forward` tells whether apex -> other runs along the counterclockwise
// direction of the face the degenerate triangles are attached to.
inline void emit_fan(NodeId apex, NodeId other, const std::vector<NodeId>& chain_from_apex,
                     bool forward, std::vector<Triple>& out) {
    std::vector<NodeId> seq = chain_from_apex;
    seq.push_back(other);
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (forward)
            out.push_back({apex, seq[i], seq[i + 1]});
        else
            out.push_back({seq[i + 1], seq[i], apex});
    }
}

}  // namespace detail

/// Nodes strictly between consecutive corners along the boundary cycle.
/// Entry i belongs to the polygon side corners[i] -> corners[i+1].
inline std::vector<std::vector<NodeId>> polygon_side_chains(const AbstractDissection& d) {
    const auto& B = d.boundary;
    const auto& C = d.corners;
    std::vector<std::vector<NodeId>> out(C.size());
    if (C.empty() || B.empty()) return out;
    auto pos = [&](NodeId v) -> std::size_t {
        auto it = std::find(B.begin(), B.end(), v);
        if (it == B.end()) throw PreconditionFailed("corner " + std::to_string(v) + " not on boundary");
        return static_cast<std::size_t>(it - B.begin());
    };
    for (std::size_t i = 0; i < C.size(); ++i) {
        std::size_t p = pos(C[i]);
        std::size_t q = pos(C[(i + 1) % C.size()]);
        for (std::size_t j = (p + 1) % B.size(); j != q; j = (j + 1) % B.size()) out[i].push_back(B[j]);
    }
    return out;
}

/**
 * Fans every triangle side that carries side nodes, plus every polygon side
 * whose boundary stretch carries nodes. The fan hangs from the side endpoint
 * listed first in the face's counterclockwise corner order (for polygon
 * sides: first in corner order). Triples keep the middle node in the second
 * slot and follow the orientation of the corresponding simplicial face:
 * inner faces are counterclockwise with their triangle, the faces between
 * the polygon and its boundary chain are oriented against the polygon.
 */
inline std::vector<Triple> build_reduced_collinearity(const AbstractDissection& d,
                                                      const std::vector<SideChain>& triangle_sides) {
    std::vector<Triple> out;
    for (const auto& s : triangle_sides) {
        if (s.face >= d.triangles.size()) throw PreconditionFailed("side chain names unknown face");
        const Triple& t = d.triangles[s.face];
        int ia = -1, ib = -1;
        for (int k = 0; k < 3; ++k) {
            if (t[k] == s.from) ia = k;
            if (t[k] == s.to) ib = k;
        }
        if (ia < 0 || ib < 0 || ia == ib)
            throw PreconditionFailed("side chain endpoints are not two corners of face " +
                                     std::to_string(s.face));
        for (NodeId v : s.interior)
            if (v == t[0] || v == t[1] || v == t[2])
                throw PreconditionFailed("side node " + std::to_string(v) + " coincides with a corner");
        if (s.interior.empty()) continue;

        std::vector<NodeId> chain = s.interior;
        NodeId apex = s.from, other = s.to;
        if (ib < ia) {
            std::swap(apex, other);
            std::reverse(chain.begin(), chain.end());
        }
        int ka = std::min(ia, ib), kb = std::max(ia, ib);
        bool forward = (ka + 1) % 3 == kb;
        detail::emit_fan(apex, other, chain, forward, out);
    }

    auto chains = polygon_side_chains(d);
    for (std::size_t i = 0; i < chains.size(); ++i) {
        if (chains[i].empty()) continue;
        NodeId a = d.corners[i];
        NodeId b = d.corners[(i + 1) % d.corners.size()];
        std::vector<NodeId> chain = chains[i];
        if (i + 1 == chains.size()) {
            // Last side: apex is corners[0], reached at the end of the chain.
            std::swap(a, b);
            std::reverse(chain.begin(), chain.end());
            detail::emit_fan(a, b, chain, true, out);
        } else {
            detail::emit_fan(a, b, chain, false, out);
        }
    }
    return out;
}

/// Pairs {u, v} joined by a skeleton edge, derived from T and L.
inline std::set<std::pair<NodeId, NodeId>> skeleton_edges(const AbstractDissection& d) {
    auto key = [](NodeId u, NodeId v) { return u < v ? std::make_pair(u, v) : std::make_pair(v, u); };
    std::set<std::pair<NodeId, NodeId>> face_pairs;
    for (const auto& t : d.triangles)
        for (int k = 0; k < 3; ++k) face_pairs.insert(key(t[k], t[(k + 1) % 3]));
    for (const auto& c : d.collinear)
        for (int k = 0; k < 3; ++k) face_pairs.insert(key(c[k], c[(k + 1) % 3]));
    for (const auto& c : d.collinear) face_pairs.erase(key(c[0], c[2]));
    return face_pairs;
}

/// Adjacency lists of the skeleton graph.
inline std::vector<std::vector<NodeId>> skeleton_adjacency(const AbstractDissection& d) {
    std::vector<std::vector<NodeId>> adj(d.node_count);
    for (const auto& [u, v] : skeleton_edges(d)) {
        if (u >= d.node_count || v >= d.node_count) continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

}  // namespace equidiss
