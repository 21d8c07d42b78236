#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "agc/canonical.hpp"
#include "agc/equivalence.hpp"
#include "agc/graph.hpp"
#include "agc/hyperlines.hpp"
#include "agc/strata.hpp"

namespace agc {

using nlohmann::json;

inline std::string to_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

inline std::string canonical_hex(const AGraph& g) { return to_hex(canonical_form(g)); }

// ---------------------------------------------------------------------------
// Graphs: {"vertices":[{"id":str,"beta":int}], "edges":[[vid,vid]],
//          "tails":[{"at":vid,"label":int}]}

inline json graph_to_json(const AGraph& g) {
    json vertices = json::array();
    for (int v = 0; v < g.vertex_count(); ++v)
        vertices.push_back({{"id", "v" + std::to_string(v)}, {"beta", g.beta(v)}});
    json edges = json::array();
    for (auto [f1, f2] : g.edges())
        edges.push_back(json::array({"v" + std::to_string(g.boundary(f1)),
                                     "v" + std::to_string(g.boundary(f2))}));
    json tails = json::array();
    for (int f : g.tails())
        tails.push_back({{"at", "v" + std::to_string(g.boundary(f))}, {"label", g.tail_label(f)}});
    return {{"vertices", vertices}, {"edges", edges}, {"tails", tails}};
}

// Returns the graph plus the id->index correspondence used.
inline AGraph graph_from_json(const json& j, std::map<std::string, int>* ids_out = nullptr) {
    std::map<std::string, int> ids;
    RawGraph raw;
    for (const auto& v : j.at("vertices")) {
        std::string id = v.at("id").get<std::string>();
        if (ids.count(id)) throw Error("DanglingFlag", "duplicate vertex id " + id);
        ids[id] = static_cast<int>(raw.beta.size());
        raw.beta.push_back(v.at("beta").get<int>());
    }
    auto vid = [&](const std::string& id) {
        auto it = ids.find(id);
        if (it == ids.end()) throw Error("DanglingFlag", "unknown vertex id " + id);
        return it->second;
    };
    if (j.contains("edges"))
        for (const auto& e : j.at("edges")) {
            int f = static_cast<int>(raw.involution.size());
            raw.involution.push_back(f + 1);
            raw.involution.push_back(f);
            raw.boundary.push_back(vid(e.at(0).get<std::string>()));
            raw.boundary.push_back(vid(e.at(1).get<std::string>()));
            raw.tail_label.push_back(0);
            raw.tail_label.push_back(0);
        }
    if (j.contains("tails"))
        for (const auto& t : j.at("tails")) {
            raw.involution.push_back(static_cast<int>(raw.involution.size()));
            raw.boundary.push_back(vid(t.at("at").get<std::string>()));
            raw.tail_label.push_back(t.at("label").get<int>());
        }
    if (ids_out) *ids_out = ids;
    return AGraph::validate(raw);
}

// ---------------------------------------------------------------------------
// Contractions and witness chains

inline json contraction_to_json(const Contraction& c) {
    json vmap = json::object();
    for (int v = 0; v < c.source.vertex_count(); ++v)
        vmap["v" + std::to_string(v)] = "v" + std::to_string(c.vertex_map[v]);
    json tmap = json::object();
    for (int f : c.source.tails())
        tmap[std::to_string(c.source.tail_label(f))] = c.source.tail_label(f);
    return {{"source", graph_to_json(c.source)},
            {"target", graph_to_json(c.target)},
            {"vertex_map", vmap},
            {"tail_map", tmap}};
}

inline Contraction contraction_from_json(const json& j) {
    std::map<std::string, int> sids, tids;
    Contraction c;
    c.source = graph_from_json(j.at("source"), &sids);
    c.target = graph_from_json(j.at("target"), &tids);
    c.vertex_map.assign(c.source.vertex_count(), -1);
    for (const auto& [sv, tv] : j.at("vertex_map").items()) {
        auto si = sids.find(sv);
        auto ti = tids.find(tv.get<std::string>());
        if (si == sids.end() || ti == tids.end())
            throw Error("DanglingFlag", "vertex_map references unknown vertex id");
        c.vertex_map[si->second] = ti->second;
    }
    for (int v = 0; v < c.source.vertex_count(); ++v)
        if (c.vertex_map[v] < 0) throw Error("DanglingFlag", "vertex_map misses v" + std::to_string(v));
    if (j.contains("tail_map"))
        for (const auto& [l, l2] : j.at("tail_map").items())
            if (std::stoi(l) != l2.get<int>())
                throw Error("TailMismatch", "tail_map must preserve labels");
    return validate_contraction(c);
}

inline json chain_to_json(const WitnessChain& chain) {
    json steps = json::array();
    for (const auto& st : chain.steps)
        steps.push_back({{"dir", st.dir_leq ? "<=" : ">="}, {"witness", contraction_to_json(st.witness)}});
    return steps;
}

// ---------------------------------------------------------------------------
// Strata and the covering poset

inline json stratum_to_json(const Stratum& s, bool with_dim) {
    json j = {{"graph", graph_to_json(s.graph)},
              {"codim", s.codim_in_main},
              {"canonical", canonical_hex(s.graph)}};
    if (with_dim) j["dim"] = s.expected_dim;
    return j;
}

inline json poset_to_json(const StratPoset& poset, bool with_dim) {
    json nodes = json::array();
    for (const auto& s : poset.nodes) nodes.push_back(stratum_to_json(s, with_dim));
    json covers = json::array();
    for (auto [a, b] : poset.covers) covers.push_back(json::array({a, b}));
    return {{"nodes", nodes}, {"covers", covers}};
}

inline std::string poset_to_dot(const StratPoset& poset, bool with_dim) {
    std::string out = "digraph strata {\n  rankdir=TB;\n";
    for (const auto& s : poset.nodes) {
        std::string label = "codim " + std::to_string(s.codim_in_main);
        if (with_dim) label += ", dim " + std::to_string(s.expected_dim);
        out += "  \"" + canonical_hex(s.graph) + "\" [label=\"" + label + "\"];\n";
    }
    for (auto [a, b] : poset.covers)
        out += "  \"" + canonical_hex(poset.nodes[a].graph) + "\" -> \"" +
               canonical_hex(poset.nodes[b].graph) + "\";\n";
    return out + "}\n";
}

// ---------------------------------------------------------------------------
// Forms, points and finite-field reports

inline json form_to_json(const Form& f) {
    json terms = json::array();
    for (const auto& [exp, coef] : f.terms())
        terms.push_back({{"exp", exp}, {"coef", f.field().index(coef)}});
    return {{"nvars", f.nvars()}, {"degree", f.degree()}, {"terms", terms}};
}

inline Form form_from_json(const FiniteField& F, const json& j) {
    Form f(F, j.at("nvars").get<int>(), j.at("degree").get<int>());
    for (const auto& t : j.at("terms")) {
        std::vector<int> exp = t.at("exp").get<std::vector<int>>();
        long long coef = t.at("coef").get<long long>();
        if (coef >= 0 && coef < static_cast<long long>(F.size()))
            f.add_term(exp, F.from_index(static_cast<std::uint64_t>(coef)));
        else
            f.add_term(exp, F.from_int(coef));  // plain integers reduce mod p
    }
    return f;
}

inline json point_to_json(const FiniteField& F, const Point& p) {
    json out = json::array();
    for (const auto& c : p) out.push_back(F.index(c));
    return out;
}

inline json flatness_report_to_json(const FiniteField& F, const FlatnessReport& rep) {
    json fibers = json::array();
    for (const auto& rec : rep.fibers)
        fibers.push_back({{"point", point_to_json(F, rec.point)},
                          {"fiber_dim", rec.fiber_dim},
                          {"verdict", rec.pass ? "PASS" : "FAIL"}});
    json checks = json::array();
    for (const auto& chk : rep.line_checks)
        checks.push_back({{"point", point_to_json(F, chk.point)},
                          {"verdict", chk.equal ? "PASS" : "FAIL"}});
    return {{"kind", "flatness_audit"}, {"n", rep.n},          {"d", rep.d},
            {"field", rep.field},       {"seed", rep.seed},    {"expected_rel_dim", rep.expected_rel_dim},
            {"fibers", fibers},         {"line_checks", checks}, {"dims_pass", rep.dims_pass},
            {"lines_pass", rep.lines_pass}, {"pass", rep.pass}, {"note", rep.note}};
}

inline json tuple_report_to_json(const TupleReport& rep) {
    return {{"kind", "tuple_audit"}, {"n", rep.n},         {"d", rep.d},
            {"field", rep.field},    {"samples", rep.samples}, {"seed", rep.seed},
            {"expected_dim", rep.expected_dim}, {"in_locus", rep.in_locus},
            {"fraction", rep.fraction}, {"dims", rep.dims}};
}

} // namespace agc
