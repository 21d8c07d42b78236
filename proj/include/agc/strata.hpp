#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "agc/canonical.hpp"
#include "agc/graph.hpp"
#include "agc/trees.hpp"

namespace agc {

// A complete intersection X in P^N cut out by hypersurfaces of the given
// degrees.  An empty degree list is the ambient projective space itself.
struct TargetDescriptor {
    int N = 0;
    std::vector<int> degrees;

    TargetDescriptor(int n, std::vector<int> d) : N(n), degrees(std::move(d)) {
        if (N < 1) throw std::invalid_argument("ambient dimension must be positive");
        for (int deg : degrees)
            if (deg < 1) throw std::invalid_argument("hypersurface degrees must be positive");
        if (dim() <= 0) throw std::invalid_argument("descriptor has nonpositive dimension");
    }

    int codim() const { return static_cast<int>(degrees.size()); }
    int dim() const { return N - codim(); }
    int degree_sum() const {
        int s = 0;
        for (int d : degrees) s += d;
        return s;
    }
    // -m where K_X == m L; positive exactly for Fano descriptors
    int fano_coefficient() const { return N + 1 - degree_sum(); }
};

// dim(X, tau) = -m beta + #tails - #edges + (dim X - 3); the empty graph
// counts as a point of X.
inline int expected_dim(const TargetDescriptor& x, const AGraph& g) {
    if (g.empty()) return x.dim();
    return x.fano_coefficient() * g.beta_total() + g.tail_count() - g.edge_count() + (x.dim() - 3);
}

// Threshold degree floor((N+2-r)/(N+1-sum d_i)) and its modification max(.,2).
inline std::pair<int, int> threshold(const TargetDescriptor& x) {
    if (x.fano_coefficient() <= 0)
        throw Error("NotFano", "N+1 - sum(d_i) = " + std::to_string(x.fano_coefficient()));
    int e = (x.N + 2 - x.codim()) / x.fano_coefficient();
    return {e, std::max(e, 2)};
}

// Rank of the obstruction bundle cutting the moduli for X out of the
// ambient one: (sum d_i) beta + r.  Cross-checked against the two expected
// dimensions on every call.
inline int obstruction_rank(const TargetDescriptor& x, const AGraph& g) {
    const int rank = x.degree_sum() * g.beta_total() + x.codim();
    const TargetDescriptor ambient(x.N, {});
    if (!g.empty() && expected_dim(ambient, g) - expected_dim(x, g) != rank)
        throw std::logic_error("obstruction rank disagrees with the dimension difference");
    return rank;
}

// Whether dim(X, tau_1(e)) >= 2 dim X; meaningful for e above the threshold.
inline bool bend_break_bound(const TargetDescriptor& x, int e) {
    if (e < 1) throw std::invalid_argument("bend_break_bound: e must be positive");
    const int dim_tau1e = x.fano_coefficient() * e + 1 + (x.dim() - 3);
    return dim_tau1e >= 2 * x.dim();
}

// ---------------------------------------------------------------------------
// The stratification index set: stable A-graphs with r labeled tails and
// total degree e, one per isomorphism class, sorted by (codim, canonical key).

struct Stratum {
    AGraph graph;
    int expected_dim = 0;
    int codim_in_main = 0;  // equals the edge count
};

inline std::vector<AGraph> enumerate_strata(int r, int e) {
    if (r < 0 || e < 0) throw std::invalid_argument("enumerate_strata: negative parameter");
    if (e == 0 && r < 3)
        throw Error("UnstableRequest", "tau_" + std::to_string(r) + "(0) is not stable");
    // vertex count bound: positive vertices p <= e and zero vertices z <= p-2+r
    const int n_max = std::max(1, e >= 1 ? 2 * e - 2 + r : r - 2);
    std::map<std::string, AGraph> classes;
    for (int n = 1; n <= n_max; ++n) {
        for (const auto& parent : free_trees(n)) {
            std::vector<int> deg(n, 0);
            for (int i = 1; i < n; ++i) ++deg[i], ++deg[parent[i]];
            // odometer over placements of the r labeled tails
            std::vector<int> at(r, 0);
            for (;;) {
                std::vector<int> val = deg;
                for (int t : at) ++val[t];
                // beta = 0 is only possible where the valence already allows it
                std::vector<int> mins(n);
                for (int v = 0; v < n; ++v) mins[v] = val[v] >= 3 ? 0 : 1;
                std::vector<int> parts(n);
                std::function<void(int, int)> rec = [&](int slot, int left) {
                    if (slot == n) {
                        if (left != 0) return;
                        RawGraph raw;
                        raw.beta = parts;
                        for (int i = 1; i < n; ++i) {
                            int f = static_cast<int>(raw.involution.size());
                            raw.involution.push_back(f + 1);
                            raw.involution.push_back(f);
                            raw.boundary.push_back(parent[i]);
                            raw.boundary.push_back(i);
                            raw.tail_label.push_back(0);
                            raw.tail_label.push_back(0);
                        }
                        for (int t = 0; t < r; ++t) {
                            raw.involution.push_back(static_cast<int>(raw.involution.size()));
                            raw.boundary.push_back(at[t]);
                            raw.tail_label.push_back(t + 1);
                        }
                        AGraph g = AGraph::validate(raw);
                        if (is_stable(g)) classes.emplace(canonical_form(g), std::move(g));
                        return;
                    }
                    int rest_min = 0;
                    for (int i = slot + 1; i < n; ++i) rest_min += mins[i];
                    for (int b = mins[slot]; b <= left - rest_min; ++b) {
                        parts[slot] = b;
                        rec(slot + 1, left - b);
                    }
                };
                rec(0, e);
                int i = 0;
                while (i < r && ++at[i] == n) at[i++] = 0;
                if (i == r) break;
            }
        }
    }
    std::vector<AGraph> out;
    for (auto& [key, g] : classes) out.push_back(std::move(g));
    std::stable_sort(out.begin(), out.end(), [](const AGraph& a, const AGraph& b) {
        return a.edge_count() < b.edge_count();
    });
    return out;
}

inline std::vector<Stratum> stratify(const TargetDescriptor& x, int r, int e) {
    std::vector<Stratum> out;
    for (auto& g : enumerate_strata(r, e)) {
        Stratum s;
        s.expected_dim = expected_dim(x, g);
        s.codim_in_main = g.edge_count();
        s.graph = std::move(g);
        out.push_back(std::move(s));
    }
    return out;
}

// Number of stable A-graphs, other than tau_2(e) itself, with two tails and
// total degree e whose stabilization after removing the second tail is
// tau_1(e).  Exactly one graph qualifies: a degree-0 vertex carrying both
// tails attached to a degree-e vertex.
inline int diagram2_uniqueness(int e) {
    if (e < 1) throw std::invalid_argument("diagram2_uniqueness: e must be positive");
    const std::string tau2e = canonical_form(tau_r_e(2, e));
    const std::string tau1e = canonical_form(tau_r_e(1, e));
    int count = 0;
    for (const auto& g : enumerate_strata(2, e)) {
        if (canonical_form(g) == tau2e) continue;
        if (canonical_form(remove_tail(g, 2)) == tau1e) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Covering structure of the stratification: an arrow from the stratum whose
// graph arises by collapsing one edge of the deeper stratum's graph.

struct StratPoset {
    std::vector<Stratum> nodes;                 // sorted by (codim, key); node 0 is the main stratum
    std::vector<std::pair<int, int>> covers;    // (coarser node, finer node), finer = coarser + 1 edge
};

inline StratPoset stratification_poset(const TargetDescriptor& x, int r, int e) {
    StratPoset poset;
    poset.nodes = stratify(x, r, e);
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(poset.nodes.size()); ++i)
        index[canonical_form(poset.nodes[i].graph)] = i;
    std::map<std::pair<int, int>, char> seen;
    for (int i = 0; i < static_cast<int>(poset.nodes.size()); ++i) {
        const AGraph& g = poset.nodes[i].graph;
        for (auto [f1, f2] : g.edges()) {
            auto [coarse, vmap] = collapse_edge(g, f1);
            auto it = index.find(canonical_form(coarse));
            if (it == index.end()) throw std::logic_error("edge collapse left the stratification");
            auto key = std::make_pair(it->second, i);
            if (!seen.count(key)) {
                seen[key] = 1;
                poset.covers.push_back(key);
            }
        }
    }
    std::sort(poset.covers.begin(), poset.covers.end());
    return poset;
}

} // namespace agc
