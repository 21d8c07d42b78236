#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "agc/error.hpp"

namespace agc {

// A decorated tree ("A-graph"): flags are half-edges, an involution pairs
// them into edges (fixed points are tails), every vertex carries a
// nonnegative degree label beta, and tails carry marked-point labels 1..r.
//
// Vertices and flags are dense 0-based indices.  Values are immutable after
// validation; every operation below is a pure function returning new graphs.

struct RawGraph {
    std::vector<int> beta;        // one entry per vertex
    std::vector<int> involution;  // one entry per flag
    std::vector<int> boundary;    // flag -> vertex
    std::vector<int> tail_label;  // flag -> label (>0 for tails, 0 for edge flags)
};

struct Fault {
    std::string code;    // NonInvolution | NotATree | DanglingFlag | NegativeDegree | BadTailLabels
    std::string detail;  // names the offending element
};

class AGraph {
public:
    AGraph() = default;  // the empty graph

    // strict_labels demands the labels biject onto 1..#tails; internal
    // rewrites relax this to carry gapped labels between steps.
    static std::optional<AGraph> try_validate(const RawGraph& raw, std::vector<Fault>* faults = nullptr,
                                              bool strict_labels = true);

    // Throws Error with the first fault's code; the message lists them all.
    static AGraph validate(const RawGraph& raw) {
        std::vector<Fault> faults;
        auto g = try_validate(raw, &faults);
        if (!g) {
            std::string all;
            for (const auto& f : faults) all += (all.empty() ? "" : "; ") + f.code + " (" + f.detail + ")";
            throw Error(faults.front().code, all);
        }
        return *g;
    }

    int vertex_count() const { return static_cast<int>(beta_.size()); }
    int flag_count() const { return static_cast<int>(inv_.size()); }
    bool empty() const { return beta_.empty(); }

    int involution(int f) const { return inv_[f]; }
    int boundary(int f) const { return bnd_[f]; }
    int beta(int v) const { return beta_[v]; }
    int tail_label(int f) const { return lab_[f]; }
    bool is_tail(int f) const { return inv_[f] == f; }

    int beta_total() const { return std::accumulate(beta_.begin(), beta_.end(), 0); }

    int tail_count() const {
        int n = 0;
        for (int f = 0; f < flag_count(); ++f) n += is_tail(f);
        return n;
    }
    int edge_count() const { return (flag_count() - tail_count()) / 2; }

    // Tails sorted by label.
    std::vector<int> tails() const {
        std::vector<int> t;
        for (int f = 0; f < flag_count(); ++f)
            if (is_tail(f)) t.push_back(f);
        std::sort(t.begin(), t.end(), [&](int a, int b) { return lab_[a] < lab_[b]; });
        return t;
    }

    int tail_with_label(int label) const {
        for (int f = 0; f < flag_count(); ++f)
            if (is_tail(f) && lab_[f] == label) return f;
        throw Error("NotATail", "no tail with label " + std::to_string(label));
    }

    // Edges as flag pairs (f, involution(f)) with f < involution(f).
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int f = 0; f < flag_count(); ++f)
            if (inv_[f] > f) e.emplace_back(f, inv_[f]);
        return e;
    }

    std::vector<int> flags_at(int v) const {
        std::vector<int> fs;
        for (int f = 0; f < flag_count(); ++f)
            if (bnd_[f] == v) fs.push_back(f);
        return fs;
    }

    int valence(int v) const {
        int n = 0;
        for (int f = 0; f < flag_count(); ++f) n += (bnd_[f] == v);
        return n;
    }

    // Neighbor vertices through edges, ascending, with the flag on this side.
    std::vector<std::pair<int, int>> adjacent(int v) const {  // (neighbor, flag at v)
        std::vector<std::pair<int, int>> a;
        for (int f = 0; f < flag_count(); ++f)
            if (bnd_[f] == v && !is_tail(f)) a.emplace_back(bnd_[inv_[f]], f);
        std::sort(a.begin(), a.end());
        return a;
    }

    bool operator==(const AGraph& o) const {
        return beta_ == o.beta_ && inv_ == o.inv_ && bnd_ == o.bnd_ && lab_ == o.lab_;
    }

    RawGraph raw() const { return RawGraph{beta_, inv_, bnd_, lab_}; }

private:
    std::vector<int> beta_;
    std::vector<int> inv_;
    std::vector<int> bnd_;
    std::vector<int> lab_;
};

inline std::optional<AGraph> AGraph::try_validate(const RawGraph& raw, std::vector<Fault>* faults,
                                                  bool strict_labels) {
    const int nv = static_cast<int>(raw.beta.size());
    const int nf = static_cast<int>(raw.involution.size());
    if (static_cast<int>(raw.boundary.size()) != nf || static_cast<int>(raw.tail_label.size()) != nf)
        throw std::invalid_argument("RawGraph flag arrays disagree in length");

    std::vector<Fault> out;
    for (int v = 0; v < nv; ++v)
        if (raw.beta[v] < 0) out.push_back({"NegativeDegree", "vertex " + std::to_string(v)});

    bool structure_ok = true;
    for (int f = 0; f < nf; ++f) {
        if (raw.boundary[f] < 0 || raw.boundary[f] >= nv) {
            out.push_back({"DanglingFlag", "flag " + std::to_string(f)});
            structure_ok = false;
        }
        if (raw.involution[f] < 0 || raw.involution[f] >= nf ||
            raw.involution[raw.involution[f]] != f) {
            out.push_back({"NonInvolution", "flag " + std::to_string(f)});
            structure_ok = false;
        }
    }

    if (structure_ok) {
        // Tail labels must biject onto {1..#tails}.
        std::vector<int> labels;
        bool labels_ok = true;
        for (int f = 0; f < nf; ++f) {
            if (raw.involution[f] == f) {
                if (raw.tail_label[f] < 0 || (strict_labels && raw.tail_label[f] == 0)) {
                    out.push_back({"BadTailLabels", "tail flag " + std::to_string(f) + " unlabeled"});
                    labels_ok = false;
                } else {
                    labels.push_back(raw.tail_label[f]);
                }
            } else if (raw.tail_label[f] != 0) {
                out.push_back({"BadTailLabels", "edge flag " + std::to_string(f) + " carries a label"});
                labels_ok = false;
            }
        }
        if (labels_ok && strict_labels) {
            std::sort(labels.begin(), labels.end());
            for (int i = 0; i < static_cast<int>(labels.size()); ++i)
                if (labels[i] != i + 1) {
                    out.push_back({"BadTailLabels",
                                   "labels are not exactly 1.." + std::to_string(labels.size())});
                    break;
                }
        }

        // Tree test: connected and #edges == #vertices - 1 (empty graph is fine).
        if (nv > 0) {
            int tails = 0;
            for (int f = 0; f < nf; ++f) tails += (raw.involution[f] == f);
            const int nedges = (nf - tails) / 2;
            std::vector<std::vector<int>> adj(nv);
            for (int f = 0; f < nf; ++f)
                if (raw.involution[f] > f)
                    adj[raw.boundary[f]].push_back(raw.boundary[raw.involution[f]]),
                    adj[raw.boundary[raw.involution[f]]].push_back(raw.boundary[f]);
            std::vector<char> seen(nv, 0);
            std::queue<int> q;
            q.push(0);
            seen[0] = 1;
            int reached = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (int w : adj[v])
                    if (!seen[w]) seen[w] = 1, ++reached, q.push(w);
            }
            if (reached != nv)
                out.push_back({"NotATree", "disconnected: " + std::to_string(nv - reached) +
                                               " vertices unreachable from vertex 0"});
            else if (nedges != nv - 1)
                out.push_back({"NotATree", "cycle: " + std::to_string(nedges) + " edges on " +
                                               std::to_string(nv) + " vertices"});
        } else if (nf != 0) {
            out.push_back({"DanglingFlag", "flags without vertices"});
        }
    }

    if (faults) *faults = out;
    if (!out.empty()) return std::nullopt;
    AGraph g;
    g.beta_ = raw.beta;
    g.inv_ = raw.involution;
    g.bnd_ = raw.boundary;
    g.lab_ = raw.tail_label;
    return g;
}

// ---------------------------------------------------------------------------
// Stability and stabilization

inline bool is_stable(const AGraph& g) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.beta(v) == 0 && g.valence(v) < 3) return false;
    return true;
}

namespace detail {

// Construct with relaxed tail labels (gaps allowed); structural faults still throw.
inline AGraph build_relaxed(const RawGraph& raw) {
    std::vector<Fault> faults;
    auto g = AGraph::try_validate(raw, &faults, false);
    if (!g) throw Error(faults.front().code, "internal rewrite produced a bad graph: " + faults.front().detail);
    return *g;
}

// Drop the marked flags/vertices and compact indices.  Labels are kept as-is.
inline AGraph erase_and_rebuild(const AGraph& g, const std::vector<char>& drop_flag,
                                const std::vector<char>& drop_vertex,
                                const std::vector<std::pair<int, int>>& repair_pairs = {},
                                const std::vector<std::pair<int, int>>& new_tail_labels = {}) {
    RawGraph raw;
    std::vector<int> vmap(g.vertex_count(), -1), fmap(g.flag_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!drop_vertex[v]) {
            vmap[v] = static_cast<int>(raw.beta.size());
            raw.beta.push_back(g.beta(v));
        }
    int kept = 0;
    for (int f = 0; f < g.flag_count(); ++f)
        if (!drop_flag[f]) fmap[f] = kept++;
    std::vector<int> inv(g.flag_count()), lab(g.flag_count());
    for (int f = 0; f < g.flag_count(); ++f) inv[f] = g.involution(f), lab[f] = g.tail_label(f);
    for (auto [a, b] : repair_pairs) inv[a] = b, inv[b] = a;  // b == a turns a into a tail
    for (auto [f, l] : new_tail_labels) lab[f] = l;
    for (int f = 0; f < g.flag_count(); ++f) {
        if (drop_flag[f]) continue;
        raw.involution.push_back(fmap[inv[f]]);
        raw.boundary.push_back(vmap[g.boundary(f)]);
        raw.tail_label.push_back(lab[f]);
    }
    return build_relaxed(raw);
}

} // namespace detail

// Contract the unstable beta=0 ends/joints away: a valence-1 vertex is
// deleted with its edge, a valence-2 vertex is smoothed by merging its two
// incident flags (edge+edge -> edge, edge+tail -> tail keeping the label).
// Idempotent; order-independent up to isomorphism (lowest vertex id first).
inline AGraph stabilize(const AGraph& g0) {
    AGraph g = g0;
    for (;;) {
        int pick = -1;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (g.beta(v) == 0 && g.valence(v) < 3) {
                pick = v;
                break;
            }
        if (pick < 0) return g;
        auto fs = g.flags_at(pick);
        if (g.vertex_count() == 1)
            throw Error("Unstabilizable", "stabilization of a nonempty graph would be empty");
        std::vector<char> df(g.flag_count(), 0), dv(g.vertex_count(), 0);
        dv[pick] = 1;
        if (fs.size() == 1) {
            // leaf: in a connected multi-vertex graph the flag is half an edge
            df[fs[0]] = df[g.involution(fs[0])] = 1;
            g = detail::erase_and_rebuild(g, df, dv);
        } else {
            int f1 = fs[0], f2 = fs[1];
            df[f1] = df[f2] = 1;
            if (!g.is_tail(f1) && !g.is_tail(f2)) {
                int a = g.involution(f1), b = g.involution(f2);
                g = detail::erase_and_rebuild(g, df, dv, {{a, b}});
            } else {
                if (g.is_tail(f1)) std::swap(f1, f2);  // f1 edge flag, f2 tail
                int a = g.involution(f1);
                g = detail::erase_and_rebuild(g, df, dv, {{a, a}}, {{a, g.tail_label(f2)}});
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Tail removal (the operators on marked points)

enum class TailMode { Positive, Zero, All };

namespace detail {

// Order-preserving relabel of tails to 1..k.
inline AGraph normalize_labels(const AGraph& g) {
    auto ts = g.tails();
    RawGraph raw = g.raw();
    for (int i = 0; i < static_cast<int>(ts.size()); ++i) raw.tail_label[ts[i]] = i + 1;
    return AGraph::validate(raw);
}

inline AGraph strip_tails(const AGraph& g, bool at_positive) {
    std::vector<char> df(g.flag_count(), 0), dv(g.vertex_count(), 0);
    for (int f = 0; f < g.flag_count(); ++f)
        if (g.is_tail(f) && (g.beta(g.boundary(f)) > 0) == at_positive) df[f] = 1;
    return erase_and_rebuild(g, df, dv);
}

} // namespace detail

inline AGraph remove_tails(const AGraph& g, TailMode mode) {
    switch (mode) {
        case TailMode::Positive:
            return detail::normalize_labels(detail::strip_tails(g, true));
        case TailMode::Zero:
            return detail::normalize_labels(stabilize(detail::strip_tails(g, false)));
        case TailMode::All: {
            auto h = detail::strip_tails(detail::strip_tails(g, true), false);
            return detail::normalize_labels(stabilize(h));
        }
    }
    throw std::logic_error("bad TailMode");
}

// Remove the single tail with the given label, stabilize, relabel 1..k.
inline AGraph remove_tail(const AGraph& g, int label) {
    int f = g.tail_with_label(label);
    std::vector<char> df(g.flag_count(), 0), dv(g.vertex_count(), 0);
    df[f] = 1;
    return detail::normalize_labels(stabilize(detail::erase_and_rebuild(g, df, dv)));
}

// ---------------------------------------------------------------------------
// Breaking and gluing along an edge (Diagram 1)

// Cut the edge containing flag f.  The component of boundary(f) comes first;
// in each half the cut flag becomes the highest-labeled tail.
inline std::pair<AGraph, AGraph> break_edge(const AGraph& g, int f) {
    if (f < 0 || f >= g.flag_count() || g.is_tail(f))
        throw Error("NotAnEdge", "flag " + std::to_string(f));
    const int fbar = g.involution(f);
    // vertices of the component containing boundary(f), avoiding the cut edge
    std::vector<char> side(g.vertex_count(), 0);
    std::queue<int> q;
    q.push(g.boundary(f));
    side[g.boundary(f)] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, fl] : g.adjacent(v))
            if (fl != f && fl != fbar && !side[w]) side[w] = 1, q.push(w);
    }
    auto take = [&](bool keep_side, int cut_flag) {
        std::vector<char> df(g.flag_count(), 0), dv(g.vertex_count(), 0);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (static_cast<bool>(side[v]) != keep_side) dv[v] = 1;
        for (int fl = 0; fl < g.flag_count(); ++fl)
            if (dv[g.boundary(fl)]) df[fl] = 1;
        AGraph half = detail::erase_and_rebuild(g, df, dv, {{cut_flag, cut_flag}},
                                                {{cut_flag, 0}});
        // relabel: inherited tails keep their order, cut tail appended last
        auto ts = half.tails();  // label-0 cut tail sorts first
        RawGraph raw = half.raw();
        int next = 1;
        for (int t : ts)
            if (half.tail_label(t) > 0) raw.tail_label[t] = next++;
        for (int t : ts)
            if (half.tail_label(t) == 0) raw.tail_label[t] = next++;
        return AGraph::validate(raw);
    };
    return {take(true, f), take(false, fbar)};
}

// Disjoint union with the two tails welded into an edge.  Remaining tails are
// relabeled 1..r by (old label, first-graph-first).
inline AGraph glue(const AGraph& g1, int f1, const AGraph& g2, int f2) {
    if (f1 < 0 || f1 >= g1.flag_count() || !g1.is_tail(f1))
        throw Error("NotATail", "flag " + std::to_string(f1) + " of first graph");
    if (f2 < 0 || f2 >= g2.flag_count() || !g2.is_tail(f2))
        throw Error("NotATail", "flag " + std::to_string(f2) + " of second graph");
    RawGraph raw;
    const int voff = g1.vertex_count(), foff = g1.flag_count();
    for (int v = 0; v < g1.vertex_count(); ++v) raw.beta.push_back(g1.beta(v));
    for (int v = 0; v < g2.vertex_count(); ++v) raw.beta.push_back(g2.beta(v));
    for (int f = 0; f < g1.flag_count(); ++f) {
        raw.involution.push_back(g1.involution(f));
        raw.boundary.push_back(g1.boundary(f));
        raw.tail_label.push_back(g1.tail_label(f));
    }
    for (int f = 0; f < g2.flag_count(); ++f) {
        raw.involution.push_back(g2.involution(f) + foff);
        raw.boundary.push_back(g2.boundary(f) + voff);
        raw.tail_label.push_back(g2.tail_label(f));
    }
    raw.involution[f1] = foff + f2;
    raw.involution[foff + f2] = f1;
    raw.tail_label[f1] = raw.tail_label[foff + f2] = 0;
    // relabel remaining tails by (old label, graph order)
    std::vector<std::pair<int, int>> rem;  // (old label, flag)
    for (int f = 0; f < static_cast<int>(raw.involution.size()); ++f)
        if (raw.involution[f] == f) rem.emplace_back(raw.tail_label[f], f);
    std::sort(rem.begin(), rem.end());
    for (int i = 0; i < static_cast<int>(rem.size()); ++i) raw.tail_label[rem[i].second] = i + 1;
    return AGraph::validate(raw);
}

// Merge the two endpoints of the edge containing flag f into one vertex.
// Returns the contracted graph and the old->new vertex map.
inline std::pair<AGraph, std::vector<int>> collapse_edge(const AGraph& g, int f) {
    if (f < 0 || f >= g.flag_count() || g.is_tail(f))
        throw Error("NotAnEdge", "flag " + std::to_string(f));
    const int fbar = g.involution(f);
    int u = g.boundary(f), w = g.boundary(fbar);
    if (u > w) std::swap(u, w);
    RawGraph raw;
    std::vector<int> vmap(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (v == w) {
            vmap[v] = vmap[u];
            continue;
        }
        vmap[v] = static_cast<int>(raw.beta.size());
        raw.beta.push_back(g.beta(v));
    }
    raw.beta[vmap[u]] = g.beta(u) + g.beta(w);
    std::vector<int> fmap(g.flag_count(), -1);
    for (int fl = 0; fl < g.flag_count(); ++fl) {
        if (fl == f || fl == fbar) continue;
        fmap[fl] = static_cast<int>(raw.boundary.size());
        raw.boundary.push_back(vmap[g.boundary(fl)]);
        raw.tail_label.push_back(g.tail_label(fl));
        raw.involution.push_back(-1);
    }
    // partners are dropped in pairs, so every kept flag's partner is kept
    for (int fl = 0; fl < g.flag_count(); ++fl)
        if (fmap[fl] >= 0) raw.involution[fmap[fl]] = fmap[g.involution(fl)];
    return {AGraph::validate(raw), vmap};
}

// ---------------------------------------------------------------------------
// Numerical invariants

struct GraphInvariants {
    int beta_total = 0;
    int max_component_degree = 0;
    int n_tails = 0;
    int n_edges = 0;
    int n_vertices = 0;
    int diameter = 0;  // number of vertices on a longest path
    std::vector<int> degree_zero_vertex_set;
};

namespace detail {

inline std::pair<int, int> farthest_from(const AGraph& g, int start) {  // (vertex, #vertices on path)
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<int> q;
    q.push(start);
    dist[start] = 1;
    int best = start;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, fl] : g.adjacent(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                if (dist[w] > dist[best] || (dist[w] == dist[best] && w < best)) best = w;
                q.push(w);
            }
    }
    return {best, dist[best]};
}

} // namespace detail

inline int diameter(const AGraph& g) {
    if (g.empty()) return 0;
    auto [u, d1] = detail::farthest_from(g, 0);
    auto [w, d2] = detail::farthest_from(g, u);
    return d2;
}

inline GraphInvariants invariants(const AGraph& g) {
    GraphInvariants inv;
    inv.n_vertices = g.vertex_count();
    inv.n_tails = g.tail_count();
    inv.n_edges = g.edge_count();
    inv.beta_total = g.beta_total();
    for (int v = 0; v < g.vertex_count(); ++v) {
        inv.max_component_degree = std::max(inv.max_component_degree, g.beta(v));
        if (g.beta(v) == 0) inv.degree_zero_vertex_set.push_back(v);
    }
    inv.diameter = diameter(g);
    return inv;
}

// ---------------------------------------------------------------------------
// Named standard graphs

inline AGraph empty_graph() { return AGraph(); }

// One vertex, beta = e, r labeled tails.
inline AGraph tau_r_e(int r, int e) {
    if (r < 0 || e < 0) throw std::invalid_argument("tau_r_e: negative parameter");
    if (e == 0 && r < 3)
        throw Error("UnstableRequest", "tau_" + std::to_string(r) + "(0) is not stable");
    RawGraph raw;
    raw.beta = {e};
    for (int i = 0; i < r; ++i) {
        raw.involution.push_back(i);
        raw.boundary.push_back(0);
        raw.tail_label.push_back(i + 1);
    }
    return AGraph::validate(raw);
}

// Two vertices joined by an edge, r1/r2 tails, beta e1/e2.  Tails on the
// first vertex take labels 1..r1, on the second r1+1..r1+r2.
inline AGraph tau_rr_ee(int r1, int r2, int e1, int e2) {
    if (r1 < 0 || r2 < 0 || e1 < 0 || e2 < 0) throw std::invalid_argument("tau_rr_ee: negative parameter");
    if ((e1 == 0 && r1 + 1 < 3) || (e2 == 0 && r2 + 1 < 3))
        throw Error("UnstableRequest", "tau_{" + std::to_string(r1) + "," + std::to_string(r2) +
                                           "}(" + std::to_string(e1) + "," + std::to_string(e2) +
                                           ") is not stable");
    RawGraph raw;
    raw.beta = {e1, e2};
    raw.involution = {1, 0};
    raw.boundary = {0, 1};
    raw.tail_label = {0, 0};
    for (int i = 0; i < r1; ++i) {
        raw.involution.push_back(static_cast<int>(raw.involution.size()));
        raw.boundary.push_back(0);
        raw.tail_label.push_back(i + 1);
    }
    for (int i = 0; i < r2; ++i) {
        raw.involution.push_back(static_cast<int>(raw.involution.size()));
        raw.boundary.push_back(1);
        raw.tail_label.push_back(r1 + i + 1);
    }
    return AGraph::validate(raw);
}

// The path sigma_e: e vertices in a row, every beta = 1, no tails.
inline AGraph path_sigma(int e) {
    if (e < 0) throw std::invalid_argument("path_sigma: negative length");
    RawGraph raw;
    raw.beta.assign(e, 1);
    for (int i = 0; i + 1 < e; ++i) {
        int f = static_cast<int>(raw.involution.size());
        raw.involution.push_back(f + 1);
        raw.involution.push_back(f);
        raw.boundary.push_back(i);
        raw.boundary.push_back(i + 1);
        raw.tail_label.push_back(0);
        raw.tail_label.push_back(0);
    }
    return AGraph::validate(raw);
}

} // namespace agc
