#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "agc/graph.hpp"

namespace agc {

namespace detail {

// 1 or 2 central vertices of the vertex tree (tails play no role).
inline std::vector<int> tree_centers(const AGraph& g) {
    const int n = g.vertex_count();
    if (n == 0) return {};
    if (n == 1) return {0};
    std::vector<int> deg(n, 0);
    std::vector<std::vector<int>> adj(n);
    for (auto [f1, f2] : g.edges()) {
        int u = g.boundary(f1), w = g.boundary(f2);
        adj[u].push_back(w);
        adj[w].push_back(u);
        ++deg[u];
        ++deg[w];
    }
    std::vector<int> layer;
    std::vector<char> gone(n, 0);
    for (int v = 0; v < n; ++v)
        if (deg[v] <= 1) layer.push_back(v);
    int alive = n;
    while (alive > 2) {
        std::vector<int> next;
        for (int v : layer) {
            gone[v] = 1;
            --alive;
            for (int w : adj[v])
                if (!gone[w] && --deg[w] == 1) next.push_back(w);
        }
        layer = std::move(next);
    }
    std::vector<int> centers;
    for (int v = 0; v < n; ++v)
        if (!gone[v]) centers.push_back(v);
    return centers;
}

// AHU encoding of the subtree rooted at v.  Decorations per vertex: beta,
// either the sorted tail labels or just the tail count, and an optional
// extra integer (used to pin contractions over a fixed target graph).
inline std::string ahu_encode(const AGraph& g, int v, int parent, bool with_labels,
                              const std::vector<int>* extra) {
    std::string s = "(b" + std::to_string(g.beta(v));
    std::vector<int> labels;
    for (int f : g.flags_at(v))
        if (g.is_tail(f)) labels.push_back(g.tail_label(f));
    std::sort(labels.begin(), labels.end());
    if (with_labels) {
        for (int l : labels) s += "t" + std::to_string(l);
    } else if (!labels.empty()) {
        s += "c" + std::to_string(labels.size());
    }
    if (extra) s += "m" + std::to_string((*extra)[v]);
    std::vector<std::string> kids;
    for (auto [w, f] : g.adjacent(v))
        if (w != parent) kids.push_back(ahu_encode(g, w, v, with_labels, extra));
    std::sort(kids.begin(), kids.end());
    for (auto& k : kids) s += k;
    return s + ")";
}

inline std::string canonical_impl(const AGraph& g, bool with_labels, const std::vector<int>* extra) {
    if (g.empty()) return "()";
    std::string best;
    for (int c : tree_centers(g)) {
        std::string s = ahu_encode(g, c, -1, with_labels, extra);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

} // namespace detail

// Equal strings exactly for graphs related by a bijection preserving
// incidence, beta and tail labels.
inline std::string canonical_form(const AGraph& g) {
    return detail::canonical_impl(g, true, nullptr);
}

// Same but forgetting which label sits on which tail (tail counts still matter).
inline std::string canonical_form_unlabeled(const AGraph& g) {
    return detail::canonical_impl(g, false, nullptr);
}

// Canonical key for a graph with one extra integer pinned to each vertex.
inline std::string canonical_form_decorated(const AGraph& g, const std::vector<int>& extra) {
    return detail::canonical_impl(g, true, &extra);
}

inline bool isomorphic(const AGraph& a, const AGraph& b) {
    return canonical_form(a) == canonical_form(b);
}

} // namespace agc
