#pragma once

/**
 * @file coloring.hpp
 * @brief Monsky's three-coloring of rational points and the parity certificate.
 *
 * A point (x, y) is red when |x|_2 attains m = max(|x|_2, |y|_2, 1), green
 * when |y|_2 attains m but |x|_2 does not, and blue otherwise. A colorful
 * triangle has area of 2-adic value at least 2, so it can never have area
 * E/n with E an integer and n odd.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "equidiss/dissection/geometry.hpp"
#include "equidiss/dissection/io.hpp"
#include "equidiss/dissection/types.hpp"
#include "equidiss/errors.hpp"
#include "equidiss/numerics/valuation.hpp"

namespace equidiss {

enum class Color { Red, Green, Blue };

inline char color_letter(Color c) {
    switch (c) {
        case Color::Red: return 'R';
        case Color::Green: return 'G';
        default: return 'B';
    }
}

inline Color color_point(const Rational& x, const Rational& y) {
    switch (val2_max(val2(x), val2(y), TwoAdicValue::pow2(0))) {
        case 1: return Color::Red;
        case 2: return Color::Green;
        default: return Color::Blue;
    }
}

inline Color color_point(const Point<Rational>& p) { return color_point(p.x, p.y); }

inline bool is_colorful(Color a, Color b, Color c) { return a != b && b != c && a != c; }

inline bool is_red_blue(Color a, Color b) {
    return (a == Color::Red && b == Color::Blue) || (a == Color::Blue && b == Color::Red);
}

/// 2-adic value of the signed area of a colorful triangle; at least 2.
inline TwoAdicValue colorful_area_check(const Point<Rational>& p1, const Point<Rational>& p2,
                                        const Point<Rational>& p3) {
    if (!is_colorful(color_point(p1), color_point(p2), color_point(p3)))
        throw NotColorful("triangle corners do not carry three distinct colors");
    TwoAdicValue v = val2(signed_area(p1, p2, p3));
    if (v < TwoAdicValue::pow2(-1))
        throw Error("colorful triangle with area valuation " + v.str() + " below 2");
    return v;
}

struct ColorfulFace {
    std::size_t face = 0;
    Triple nodes{};
    std::array<Color, 3> colors{};
    TwoAdicValue area_value = TwoAdicValue::zero();
};

struct MonskyCertificate {
    std::size_t rb_boundary_edge_count = 0;
    std::optional<ColorfulFace> colorful_face;
    std::size_t colorful_face_count = 0;
    std::vector<Color> corner_colors;  ///< color of every node, indexed by NodeId

    bool rb_odd() const { return rb_boundary_edge_count % 2 == 1; }
};

/// Colors every node of a constrained rational framed map, counts red-blue
/// steps of the boundary cycle and reports the first colorful face of T.
inline MonskyCertificate certify(const AbstractDissection& d, const FramedMap<Rational>& phi) {
    if (phi.size() != d.node_count) throw NotConstrained("map size differs from node count");
    for (std::size_t i = 0; i < d.corners.size(); ++i)
        if (!(phi[d.corners[i]] == d.polygon.at(i)))
            throw NotConstrained("corner node " + std::to_string(d.corners[i]) + " is not framed");
    for (const auto& t : d.collinear)
        if (!signed_area(phi, t).is_zero()) throw NotConstrained("a collinearity triple is not collinear");
    if (d.area.sign() <= 0 || !d.area.is_integer())
        throw PreconditionFailed("polygon area must be a positive integer");

    MonskyCertificate cert;
    for (const auto& p : phi.coords) cert.corner_colors.push_back(color_point(p));
    for (std::size_t i = 0; i < d.boundary.size(); ++i) {
        NodeId u = d.boundary[i], v = d.boundary[(i + 1) % d.boundary.size()];
        if (is_red_blue(cert.corner_colors[u], cert.corner_colors[v])) ++cert.rb_boundary_edge_count;
    }
    for (std::size_t f = 0; f < d.triangles.size(); ++f) {
        const Triple& t = d.triangles[f];
        std::array<Color, 3> c{cert.corner_colors[t[0]], cert.corner_colors[t[1]], cert.corner_colors[t[2]]};
        if (!is_colorful(c[0], c[1], c[2])) continue;
        ++cert.colorful_face_count;
        if (!cert.colorful_face)
            cert.colorful_face = ColorfulFace{f, t, c, colorful_area_check(phi[t[0]], phi[t[1]], phi[t[2]])};
    }
    if (cert.rb_odd() && !cert.colorful_face)
        throw Error("odd red-blue count without a colorful face; the map is not constrained");
    return cert;
}

inline MonskyCertificate certify(const DissectionFile& file) {
    if (!file.is_rational()) throw IrrationalCoordinates("certificates need rational coordinates");
    return certify(file.dissection, std::get<FramedMap<Rational>>(file.map));
}

inline nlohmann::json certificate_to_json(const MonskyCertificate& c) {
    nlohmann::json j;
    j["rb_edges"] = c.rb_boundary_edge_count;
    j["colorful_face"] = c.colorful_face ? nlohmann::json(c.colorful_face->nodes) : nlohmann::json(nullptr);
    nlohmann::json colors = nlohmann::json::object();
    for (std::size_t v = 0; v < c.corner_colors.size(); ++v)
        colors[std::to_string(v)] = std::string(1, color_letter(c.corner_colors[v]));
    j["colors"] = colors;
    return j;
}

struct RbParity {
    std::size_t count = 0;
    bool odd() const { return count % 2 == 1; }
};

/// Number of polygon sides whose endpoints are one red and one blue.
inline RbParity rb_side_parity(const std::vector<Point<Rational>>& corners) {
    RbParity r;
    for (std::size_t i = 0; i < corners.size(); ++i)
        if (is_red_blue(color_point(corners[i]), color_point(corners[(i + 1) % corners.size()]))) ++r.count;
    return r;
}

}  // namespace equidiss
