#pragma once

#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "agc/canonical.hpp"
#include "agc/graph.hpp"

namespace agc {

// A contraction collapses a finer stable A-graph onto a coarser one: the
// vertex map is surjective with connected fibers, non-collapsed edges biject
// onto target edges, beta adds up over each fiber, and tails correspond
// label by label.
struct Contraction {
    AGraph source;
    AGraph target;
    std::vector<int> vertex_map;  // source vertex -> target vertex

    bool operator==(const Contraction& o) const {
        return source == o.source && target == o.target && vertex_map == o.vertex_map;
    }
};

// Non-throwing check; on failure fills code/detail with the first violation.
inline bool check_contraction(const Contraction& c, std::string* code = nullptr,
                              std::string* detail = nullptr) {
    auto fail = [&](const char* k, const std::string& d) {
        if (code) *code = k;
        if (detail) *detail = d;
        return false;
    };
    const AGraph& s = c.source;
    const AGraph& t = c.target;
    if (static_cast<int>(c.vertex_map.size()) != s.vertex_count())
        throw std::invalid_argument("vertex_map length disagrees with source");
    for (int v = 0; v < s.vertex_count(); ++v)
        if (c.vertex_map[v] < 0 || c.vertex_map[v] >= t.vertex_count())
            throw std::invalid_argument("vertex_map value out of range");
    if (!is_stable(s)) return fail("NotStable", "source is not stable");
    if (!is_stable(t)) return fail("NotStable", "target is not stable");

    // fibers: nonempty, connected, beta-additive
    std::vector<std::vector<int>> fiber(t.vertex_count());
    for (int v = 0; v < s.vertex_count(); ++v) fiber[c.vertex_map[v]].push_back(v);
    for (int w = 0; w < t.vertex_count(); ++w) {
        if (fiber[w].empty())
            return fail("FiberDisconnected", "fiber over target vertex " + std::to_string(w) + " is empty");
        std::vector<char> in(s.vertex_count(), 0), seen(s.vertex_count(), 0);
        for (int v : fiber[w]) in[v] = 1;
        std::queue<int> q;
        q.push(fiber[w][0]);
        seen[fiber[w][0]] = 1;
        int reached = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (auto [u, f] : s.adjacent(v))
                if (in[u] && !seen[u]) seen[u] = 1, ++reached, q.push(u);
        }
        if (reached != static_cast<int>(fiber[w].size()))
            return fail("FiberDisconnected", "fiber over target vertex " + std::to_string(w));
        int sum = 0;
        for (int v : fiber[w]) sum += s.beta(v);
        if (sum != t.beta(w))
            return fail("BetaMismatch", "fiber over target vertex " + std::to_string(w) + " sums to " +
                                            std::to_string(sum) + ", expected " + std::to_string(t.beta(w)));
    }

    // non-collapsed source edges biject onto target edges
    std::vector<int> hit(t.edge_count(), 0);
    auto tedges = t.edges();
    for (auto [f1, f2] : s.edges()) {
        int a = c.vertex_map[s.boundary(f1)], b = c.vertex_map[s.boundary(f2)];
        if (a == b) continue;  // collapsed inside a fiber
        int found = -1;
        for (int i = 0; i < static_cast<int>(tedges.size()); ++i) {
            int u = t.boundary(tedges[i].first), w = t.boundary(tedges[i].second);
            if ((u == a && w == b) || (u == b && w == a)) {
                found = i;
                break;
            }
        }
        if (found < 0)
            return fail("EdgeMismatch", "source edge {" + std::to_string(f1) + "," + std::to_string(f2) +
                                            "} maps across non-adjacent target vertices");
        ++hit[found];
    }
    for (int i = 0; i < static_cast<int>(tedges.size()); ++i)
        if (hit[i] != 1)
            return fail("EdgeMismatch", "target edge " + std::to_string(i) + " hit " +
                                            std::to_string(hit[i]) + " times");

    // tails correspond label by label, compatibly with the vertex map
    if (s.tail_count() != t.tail_count())
        return fail("TailMismatch", "tail counts differ");
    for (int f : s.tails()) {
        int l = s.tail_label(f);
        int tf = -1;
        for (int f2 : t.tails())
            if (t.tail_label(f2) == l) {
                tf = f2;
                break;
            }
        if (tf < 0) return fail("TailMismatch", "target lacks tail label " + std::to_string(l));
        if (t.boundary(tf) != c.vertex_map[s.boundary(f)])
            return fail("TailMismatch", "tail " + std::to_string(l) + " lands on the wrong vertex");
    }
    return true;
}

inline Contraction validate_contraction(Contraction c) {
    std::string code, detail;
    if (!check_contraction(c, &code, &detail)) throw Error(code, detail);
    return c;
}

inline Contraction identity_contraction(const AGraph& g) {
    std::vector<int> vmap(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) vmap[v] = v;
    return validate_contraction({g, g, vmap});
}

// Everything onto the one-vertex graph tau_r(e) carrying the same tails.
inline Contraction canonical_contraction(const AGraph& g) {
    const int e = g.beta_total(), r = g.tail_count();
    if (e == 0 && r < 3) throw Error("UnstableTarget", "tau_" + std::to_string(r) + "(0) is not stable");
    AGraph t = tau_r_e(r, e);
    return validate_contraction({g, t, std::vector<int>(g.vertex_count(), 0)});
}

// a after e: both legs must share the middle graph's exact presentation.
inline Contraction compose(const Contraction& e, const Contraction& a) {
    if (!(e.target == a.source))
        throw Error("NotComposable", "middle graphs disagree");
    std::vector<int> vmap(e.source.vertex_count());
    for (int v = 0; v < e.source.vertex_count(); ++v) vmap[v] = a.vertex_map[e.vertex_map[v]];
    return validate_contraction({e.source, a.target, vmap});
}

// True when the fibers over beta=0 vertices are singletons and fibers over
// beta>0 vertices contain no beta=0 vertex, i.e. the contraction restricts
// to an isomorphism of degree-0 subgraphs.
inline bool is_nice(const Contraction& c) {
    std::vector<int> fiber_size(c.target.vertex_count(), 0);
    std::vector<char> fiber_has_zero(c.target.vertex_count(), 0);
    for (int v = 0; v < c.source.vertex_count(); ++v) {
        ++fiber_size[c.vertex_map[v]];
        if (c.source.beta(v) == 0) fiber_has_zero[c.vertex_map[v]] = 1;
    }
    for (int w = 0; w < c.target.vertex_count(); ++w) {
        if (c.target.beta(w) == 0 && fiber_size[w] != 1) return false;
        if (c.target.beta(w) > 0 && fiber_has_zero[w]) return false;
    }
    return true;
}

// Canonical key: equal for two contractions onto the same fixed target
// exactly when a source isomorphism commutes with the maps to the target.
inline std::string contraction_key(const Contraction& c) {
    return canonical_form(c.target) + "|" + canonical_form_decorated(c.source, c.vertex_map);
}

} // namespace agc
