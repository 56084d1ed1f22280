#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "parityq/classical.hpp"
#include "parityq/graph.hpp"
#include "parityq/problems.hpp"
#include "parityq/reductions.hpp"

namespace parityq {

using json = nlohmann::json;

// Bit vectors travel as lowercase hex, bytes little-endian in bit index, with
// the length carried by a sibling field.

inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return json{{"vertices", g.vertex_count()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return Graph(j.at("vertices").get<int>(), std::move(edges));
}

inline json trits_to_json(const TritVector& t) {
    json a = json::array();
    for (uint8_t v : t.entries()) a.push_back(int(v));
    return a;
}

inline TritVector trits_from_json(const json& j) {
    std::vector<uint8_t> e;
    for (const auto& v : j) e.push_back(uint8_t(v.get<int>()));
    return TritVector(std::move(e));
}

// ---------------------------------------------------------------------------
// Instances: {"type": "php"|"rphp"|"hlf"|"pbp"|"mod3"|"parallel", ...}

inline json instance_to_json(const PhpInstance& inst) {
    return json{{"type", "php"}, {"n", inst.n}, {"m", inst.m}, {"x", inst.x.to_hex()}};
}

inline json instance_to_json(const RphpInstance& inst,
                             const std::optional<std::pair<int, int>>& grid = std::nullopt) {
    json j{{"type", "rphp"}, {"graph", graph_to_json(inst.graph)}, {"x", inst.x.to_hex()}};
    if (grid) j["grid"] = {{"width", grid->first}, {"height", grid->second}};
    return j;
}

// A as sorted upper-triangle (i,j) pairs plus a diagonal array; b as 0..3.
inline json instance_to_json(const HlfInstance& inst) {
    json upper = json::array();
    json diag = json::array();
    json b = json::array();
    for (std::size_t i = 0; i < inst.n; ++i) {
        diag.push_back(inst.a.get(i, i) ? 1 : 0);
        b.push_back(int(inst.b.get(i)));
        for (std::size_t j = i + 1; j < inst.n; ++j)
            if (inst.a.get(i, j)) upper.push_back({i, j});
    }
    return json{{"type", "hlf"}, {"n", inst.n}, {"a_upper", upper}, {"a_diag", diag}, {"b", b}};
}

inline json instance_to_json(const PbpInstance& inst) {
    return json{{"type", "pbp"}, {"n", inst.x.size()}, {"x", trits_to_json(inst.x)}};
}

inline json instance_to_json(const Mod3Instance& inst) {
    return json{{"type", "mod3"}, {"n", inst.x.size()}, {"x", trits_to_json(inst.x)}};
}

inline json instance_to_json(const SubInstance& sub); // forward, defined below

inline json instance_to_json(const ParallelInstance& inst) {
    json subs = json::array();
    for (const auto& sub : inst.instances) subs.push_back(instance_to_json(sub));
    return json{{"type", "parallel"},
                {"k", inst.k},
                {"win_fraction", inst.win_fraction.str()},
                {"instances", subs}};
}

inline json instance_to_json(const SubInstance& sub) {
    return std::visit([](const auto& inst) { return instance_to_json(inst); }, sub);
}

inline PhpInstance php_from_json(const json& j) {
    std::size_t n = j.at("n").get<std::size_t>();
    return PhpInstance(n, j.at("m").get<std::size_t>(),
                       F2Vector::from_hex(n, j.at("x").get<std::string>()));
}

inline RphpInstance rphp_from_json(const json& j) {
    Graph g = graph_from_json(j.at("graph"));
    return RphpInstance(g, F2Vector::from_hex(std::size_t(g.vertex_count()),
                                              j.at("x").get<std::string>()));
}

inline std::optional<std::pair<int, int>> rphp_grid_from_json(const json& j) {
    if (!j.contains("grid")) return std::nullopt;
    return std::pair{j.at("grid").at("width").get<int>(), j.at("grid").at("height").get<int>()};
}

inline HlfInstance hlf_from_json(const json& j) {
    std::size_t n = j.at("n").get<std::size_t>();
    F2Matrix a(n, n);
    const auto& diag = j.at("a_diag");
    for (std::size_t i = 0; i < n; ++i)
        if (diag.at(i).get<int>()) a.set(i, i, true);
    for (const auto& e : j.at("a_upper")) {
        std::size_t r = e.at(0).get<std::size_t>(), c = e.at(1).get<std::size_t>();
        if (r >= c || c >= n) throw ShapeError("hlf_from_json: bad upper-triangle pair");
        a.set(r, c, true);
        a.set(c, r, true);
    }
    Z4Vector b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, uint8_t(j.at("b").at(i).get<int>()));
    return HlfInstance(std::move(a), std::move(b));
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline SubInstance sub_instance_from_json(const json& j); // forward

inline ParallelInstance parallel_from_json(const json& j) {
    std::vector<SubInstance> subs;
    for (const auto& sj : j.at("instances")) subs.push_back(sub_instance_from_json(sj));
    return ParallelInstance(rational_from_string(j.at("win_fraction").get<std::string>()),
                            std::move(subs));
}

inline SubInstance sub_instance_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "php") return php_from_json(j);
    if (type == "rphp") return rphp_from_json(j);
    if (type == "hlf") return hlf_from_json(j);
    if (type == "pbp") return PbpInstance(trits_from_json(j.at("x")));
    if (type == "mod3") return Mod3Instance(trits_from_json(j.at("x")));
    throw std::invalid_argument("sub_instance_from_json: unknown type " + type);
}

// ---------------------------------------------------------------------------
// Solutions

inline json solution_php(const F2Vector& y) {
    return json{{"type", "php"}, {"y", y.to_hex()}, {"m", y.size()}};
}
inline json solution_rphp(const F2Vector& y, const F2Vector& d) {
    return json{{"type", "rphp"}, {"y", y.to_hex()}, {"d", d.to_hex()}};
}
inline json solution_hlf(const F2Vector& p) {
    return json{{"type", "hlf"}, {"p", p.to_hex()}, {"n", p.size()}};
}
inline json solution_pbp(const F2Vector& y) {
    return json{{"type", "pbp"}, {"y", y.to_hex()}, {"m", y.size()}};
}
inline json solution_mod3(int y) { return json{{"type", "mod3"}, {"y", y}}; }

// ---------------------------------------------------------------------------
// Strategies: affine {a, b-hex}; local {supports, tables-hex}

inline json strategy_to_json(const AffineStrategy& s) {
    return json{{"type", "affine"}, {"n", s.b.size()}, {"a", s.a}, {"b", s.b.to_hex()}};
}

inline AffineStrategy affine_from_json(const json& j) {
    std::size_t n = j.at("n").get<std::size_t>();
    return AffineStrategy{j.at("a").get<int>(), F2Vector::from_hex(n, j.at("b").get<std::string>())};
}

inline json strategy_to_json(const LocalStrategy& s) {
    json supports = json::array();
    json tables = json::array();
    for (std::size_t j = 0; j < s.outputs(); ++j) {
        supports.push_back(s.supports[j]);
        std::size_t bits = std::size_t(1) << s.supports[j].size();
        F2Vector t(bits);
        for (std::size_t i = 0; i < bits; ++i)
            t.set(i, (s.tables[j][i >> 6] >> (i & 63)) & 1);
        tables.push_back(t.to_hex());
    }
    return json{{"type", "local"}, {"n", s.n}, {"supports", supports}, {"tables", tables}};
}

inline LocalStrategy local_from_json(const json& j) {
    LocalStrategy s;
    s.n = j.at("n").get<std::size_t>();
    for (const auto& sup : j.at("supports"))
        s.supports.push_back(sup.get<std::vector<int>>());
    const auto& tables = j.at("tables");
    for (std::size_t k = 0; k < s.supports.size(); ++k) {
        std::size_t bits = std::size_t(1) << s.supports[k].size();
        F2Vector t = F2Vector::from_hex(bits, tables.at(k).get<std::string>());
        s.tables.push_back(t.words());
    }
    s.validate();
    return s;
}

// ---------------------------------------------------------------------------
// Embeddings

inline json embedding_to_json(const HlfEmbedding& emb) {
    json j{{"vertices", emb.vcount}, {"edges", emb.ecount}};
    if (emb.coords) {
        json coords = json::array();
        for (auto [r, c] : *emb.coords) coords.push_back({r, c});
        j["coords"] = coords;
    }
    return j;
}

inline HlfEmbedding embedding_from_json(const json& j) {
    HlfEmbedding emb;
    emb.vcount = j.at("vertices").get<std::size_t>();
    emb.ecount = j.at("edges").get<std::size_t>();
    if (j.contains("coords")) {
        std::vector<std::pair<int, int>> coords;
        for (const auto& c : j.at("coords"))
            coords.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
        emb.coords = std::move(coords);
    }
    return emb;
}

} // namespace parityq
