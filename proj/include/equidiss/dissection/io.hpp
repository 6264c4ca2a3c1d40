#pragma once

/**
 * @file io.hpp
 * @brief The dissection interchange file (JSON).
 *
 * Coordinates are either all rational ("p/q" strings) or all BigFloat
 * (decimal strings at the file's precision_bits). Unknown top-level keys
 * are kept in `metadata` and written back unchanged.
 */

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "equidiss/dissection/types.hpp"
#include "equidiss/errors.hpp"
#include "equidiss/numerics/bigfloat.hpp"
#include "equidiss/numerics/rational.hpp"

namespace equidiss {

struct DissectionFile {
    AbstractDissection dissection;
    std::variant<FramedMap<Rational>, FramedMap<BigFloat>> map;
    long precision_bits = kDefaultPrecision;
    nlohmann::json metadata = nlohmann::json::object();

    bool is_rational() const { return std::holds_alternative<FramedMap<Rational>>(map); }
};

namespace detail {

inline Rational json_rational(const nlohmann::json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError("expected a rational string, got " + j.dump());
}

inline BigFloat json_bigfloat(const nlohmann::json& j, long precision) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.find('/') != std::string::npos) return BigFloat(Rational::parse(s), precision);
        return BigFloat::parse(s, precision);
    }
    if (j.is_number_integer()) return BigFloat(j.get<long>(), precision);
    if (j.is_number()) return BigFloat(j.get<double>(), precision);
    throw ParseError("expected a decimal string, got " + j.dump());
}

inline Triple json_triple(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw ParseError("expected a node triple, got " + j.dump());
    return {j[0].get<NodeId>(), j[1].get<NodeId>(), j[2].get<NodeId>()};
}

}  // namespace detail

inline const char* const kDissectionKeys[] = {"n",     "K",         "polygon",   "area",
                                              "nodes", "boundary",  "corners",   "triangles",
                                              "collinear", "scalar", "precision_bits"};

inline DissectionFile dissection_from_json(const nlohmann::json& j) {
    try {
        DissectionFile f;
        AbstractDissection& d = f.dissection;
        for (const auto& p : j.at("polygon")) {
            if (!p.is_array() || p.size() != 2) throw ParseError("polygon corner must be [x, y]");
            d.polygon.push_back({detail::json_rational(p[0]), detail::json_rational(p[1])});
        }
        d.area = detail::json_rational(j.at("area"));
        d.boundary = j.at("boundary").get<std::vector<NodeId>>();
        d.corners = j.at("corners").get<std::vector<NodeId>>();
        for (const auto& t : j.at("triangles")) d.triangles.push_back(detail::json_triple(t));
        if (j.contains("collinear"))
            for (const auto& t : j.at("collinear")) d.collinear.push_back(detail::json_triple(t));

        const auto& nodes = j.at("nodes");
        d.node_count = nodes.size();
        std::string scalar = j.value("scalar", std::string("rational"));
        if (j.contains("precision_bits")) f.precision_bits = j.at("precision_bits").get<long>();
        std::vector<char> seen(d.node_count, 0);
        auto slot = [&](const nlohmann::json& node) {
            NodeId id = node.at("id").get<NodeId>();
            if (id >= d.node_count || seen[id]) throw ParseError("node ids must be 0..N-1 without repeats");
            seen[id] = 1;
            return id;
        };
        if (scalar == "rational") {
            FramedMap<Rational> m;
            m.coords.resize(d.node_count);
            for (const auto& node : nodes) {
                NodeId id = slot(node);
                m.coords[id] = {detail::json_rational(node.at("x")), detail::json_rational(node.at("y"))};
            }
            f.map = std::move(m);
        } else if (scalar == "bigfloat") {
            FramedMap<BigFloat> m;
            m.coords.assign(d.node_count, Point<BigFloat>{BigFloat(f.precision_bits), BigFloat(f.precision_bits)});
            for (const auto& node : nodes) {
                NodeId id = slot(node);
                m.coords[id] = {detail::json_bigfloat(node.at("x"), f.precision_bits),
                                detail::json_bigfloat(node.at("y"), f.precision_bits)};
            }
            f.map = std::move(m);
        } else {
            throw ParseError("unknown scalar kind '" + scalar + "'");
        }

        if (j.contains("n") && j.at("n").get<std::size_t>() != d.n())
            throw ParseError("declared n differs from the triangle count");
        if (j.contains("K") && j.at("K").get<std::size_t>() != d.K())
            throw ParseError("declared K differs from the corner count");

        for (const auto& [key, value] : j.items()) {
            bool known = false;
            for (const char* k : kDissectionKeys) known = known || key == k;
            if (!known) f.metadata[key] = value;
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed dissection file: ") + e.what());
    }
}

inline nlohmann::json dissection_to_json(const DissectionFile& f) {
    const AbstractDissection& d = f.dissection;
    nlohmann::json j = nlohmann::json::object();
    j["n"] = d.n();
    j["K"] = d.K();
    auto poly = nlohmann::json::array();
    for (const auto& p : d.polygon) poly.push_back({p.x.str(), p.y.str()});
    j["polygon"] = poly;
    j["area"] = d.area.str();
    auto nodes = nlohmann::json::array();
    std::visit(
        [&](const auto& m) {
            for (NodeId v = 0; v < m.size(); ++v)
                nodes.push_back({{"id", v}, {"x", m[v].x.str()}, {"y", m[v].y.str()}});
        },
        f.map);
    j["nodes"] = nodes;
    j["boundary"] = d.boundary;
    j["corners"] = d.corners;
    j["triangles"] = d.triangles;
    j["collinear"] = d.collinear;
    if (f.is_rational()) {
        j["scalar"] = "rational";
    } else {
        j["scalar"] = "bigfloat";
        j["precision_bits"] = f.precision_bits;
    }
    for (const auto& [key, value] : f.metadata.items()) j[key] = value;
    return j;
}

inline DissectionFile read_dissection(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return dissection_from_json(j);
}

inline void write_dissection(const DissectionFile& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << dissection_to_json(f).dump(1) << '\n';
}

}  // namespace equidiss
