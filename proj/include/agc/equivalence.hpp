#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "agc/contraction.hpp"
#include "agc/trees.hpp"

namespace agc {

struct SearchCaps {
    int max_vertices = 12;
    long long max_candidates = 4'000'000;
};

// ---------------------------------------------------------------------------
// S_E(tau): all nice contractions onto a fixed target with max component
// degree at most E, one representative per isomorphism class over the target.

struct ContractionSet {
    AGraph target;
    int bound_E = 0;
    std::vector<Contraction> elements;  // sorted by contraction_key
};

namespace detail {

// Compositions of total into parts.size() slots with parts in [min_part[i], max_part].
inline void compositions(int total, int slot, std::vector<int>& parts, const std::vector<int>& min_part,
                         int max_part, const std::function<void(const std::vector<int>&)>& emit) {
    const int n = static_cast<int>(parts.size());
    if (slot == n) {
        if (total == 0) emit(parts);
        return;
    }
    int rest_min = 0, rest_max = 0;
    for (int i = slot + 1; i < n; ++i) rest_min += min_part[i], rest_max += max_part;
    for (int v = min_part[slot]; v <= std::min(max_part, total); ++v) {
        if (total - v < rest_min || total - v > rest_max) continue;
        parts[slot] = v;
        compositions(total - v, slot + 1, parts, min_part, max_part, emit);
    }
}

// One way of refining a single target vertex: a tree shape on the fiber,
// positive degrees summing to the vertex degree, and a slot for each of the
// vertex's flags.
struct FiberOption {
    std::vector<int> parent;       // fiber tree shape
    std::vector<int> beta;         // per fiber vertex, all >= 1 (or == {0})
    std::vector<int> flag_slot;    // position i: fiber vertex receiving the i-th flag at w
};

inline std::vector<FiberOption> fiber_options(const AGraph& target, int w, int bound_E) {
    std::vector<FiberOption> out;
    const auto flags = target.flags_at(w);
    const int nfl = static_cast<int>(flags.size());
    if (target.beta(w) == 0) {
        out.push_back({{-1}, {0}, std::vector<int>(nfl, 0)});
        return out;
    }
    for (int k = 1; k <= target.beta(w); ++k) {
        for (const auto& parent : free_trees(k)) {
            std::vector<int> parts(k), mins(k, 1);
            compositions(target.beta(w), 0, parts, mins, bound_E, [&](const std::vector<int>& b) {
                // odometer over flag placements
                std::vector<int> slot(nfl, 0);
                for (;;) {
                    out.push_back({parent, b, slot});
                    int i = 0;
                    while (i < nfl && ++slot[i] == k) slot[i++] = 0;
                    if (i == nfl) break;
                }
            });
        }
    }
    return out;
}

} // namespace detail

// All isomorphism classes over `target` of nice contractions with
// E(source) <= bound_E, built by refining each positive vertex into a tree
// of positive vertices and redistributing its flags over the fiber.
inline ContractionSet enumerate_nice_contractions(const AGraph& target, int bound_E,
                                                  const SearchCaps& caps = {}) {
    if (bound_E < 1) throw Error("BoundTooSmall", "bound E must be at least 1");
    if (!is_stable(target)) throw Error("NotStable", "target is not stable");

    const int nw = target.vertex_count();
    std::vector<std::vector<detail::FiberOption>> options(nw);
    long long total = 1;
    for (int w = 0; w < nw; ++w) {
        options[w] = detail::fiber_options(target, w, bound_E);
        total *= std::max<long long>(1, options[w].size());
        if (total > caps.max_candidates)
            throw Error("CapExceeded", "refinement candidate count exceeds cap");
    }

    std::map<std::string, Contraction> classes;
    std::vector<int> pick(nw, 0);
    for (;;) {
        // assemble the source graph for this choice of fibers
        RawGraph raw;
        std::vector<int> vmap;
        std::vector<int> offset(nw, 0);
        for (int w = 0; w < nw; ++w) {
            const auto& opt = options[w][pick[w]];
            offset[w] = static_cast<int>(raw.beta.size());
            for (int b : opt.beta) raw.beta.push_back(b), vmap.push_back(w);
            for (int i = 1; i < static_cast<int>(opt.parent.size()); ++i) {
                int f = static_cast<int>(raw.involution.size());
                raw.involution.push_back(f + 1);
                raw.involution.push_back(f);
                raw.boundary.push_back(offset[w] + opt.parent[i]);
                raw.boundary.push_back(offset[w] + i);
                raw.tail_label.push_back(0);
                raw.tail_label.push_back(0);
            }
        }
        auto slot_of = [&](int w, int flag) {
            const auto& opt = options[w][pick[w]];
            const auto flags = target.flags_at(w);
            for (int i = 0; i < static_cast<int>(flags.size()); ++i)
                if (flags[i] == flag) return offset[w] + opt.flag_slot[i];
            throw std::logic_error("flag not at vertex");
        };
        for (auto [f1, f2] : target.edges()) {
            int f = static_cast<int>(raw.involution.size());
            raw.involution.push_back(f + 1);
            raw.involution.push_back(f);
            raw.boundary.push_back(slot_of(target.boundary(f1), f1));
            raw.boundary.push_back(slot_of(target.boundary(f2), f2));
            raw.tail_label.push_back(0);
            raw.tail_label.push_back(0);
        }
        for (int f : target.tails()) {
            raw.involution.push_back(static_cast<int>(raw.involution.size()));
            raw.boundary.push_back(slot_of(target.boundary(f), f));
            raw.tail_label.push_back(target.tail_label(f));
        }
        Contraction c = validate_contraction({AGraph::validate(raw), target, vmap});
        classes.emplace(contraction_key(c), std::move(c));

        int w = 0;
        while (w < nw && ++pick[w] == static_cast<int>(options[w].size())) pick[w++] = 0;
        if (w == nw) break;
    }

    ContractionSet s;
    s.target = target;
    s.bound_E = bound_E;
    for (auto& [key, c] : classes) s.elements.push_back(std::move(c));
    return s;
}

// ---------------------------------------------------------------------------
// The relation a <= a2: a witness epsilon with a = a2 o epsilon, found by
// exhaustive search over contractions between the sources.

inline std::optional<Contraction> leq(const Contraction& a, const Contraction& a2,
                                      const SearchCaps& caps = {}) {
    if (!(a.target == a2.target)) throw Error("TargetMismatch", "the two contractions have different targets");
    if (a.source.vertex_count() > caps.max_vertices)
        throw Error("CapExceeded", "source exceeds the vertex cap");
    if (a2.source.vertex_count() > a.source.vertex_count()) return std::nullopt;

    // epsilon(v) must live in a2's fiber over a's image of v
    const int n = a.source.vertex_count();
    std::vector<std::vector<int>> cand(n);
    long long total = 1;
    for (int v = 0; v < n; ++v) {
        for (int u = 0; u < a2.source.vertex_count(); ++u)
            if (a2.vertex_map[u] == a.vertex_map[v]) cand[v].push_back(u);
        if (cand[v].empty()) return std::nullopt;
        total *= static_cast<long long>(cand[v].size());
        if (total > caps.max_candidates) throw Error("CapExceeded", "witness search space exceeds cap");
    }

    if (a.source == a2.source && a.vertex_map == a2.vertex_map) return identity_contraction(a.source);

    std::vector<int> pick(n, 0);
    for (;;) {
        Contraction eps;
        eps.source = a.source;
        eps.target = a2.source;
        eps.vertex_map.resize(n);
        for (int v = 0; v < n; ++v) eps.vertex_map[v] = cand[v][pick[v]];
        if (check_contraction(eps)) return eps;
        int v = 0;
        while (v < n && ++pick[v] == static_cast<int>(cand[v].size())) pick[v++] = 0;
        if (v == n) return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Equivalence classes of a contraction set under the closure of <=.
//
// Chains are allowed to pass through nice contractions with one merged
// degree-2 vertex even when the set was built with bound 1 (the walk that
// equates two basic contractions visits such intermediates), so the closure
// is always taken inside the bound-max(E,2) set and then restricted.

inline std::vector<std::vector<int>> equivalence_classes(const ContractionSet& s,
                                                         const SearchCaps& caps = {}) {
    const int wide_bound = std::max(s.bound_E, 2);
    const ContractionSet& work =
        wide_bound == s.bound_E ? s : enumerate_nice_contractions(s.target, wide_bound, caps);
    const int n = static_cast<int>(work.elements.size());
    std::vector<int> rep(n);
    std::iota(rep.begin(), rep.end(), 0);
    std::function<int(int)> find = [&](int i) { return rep[i] == i ? i : rep[i] = find(rep[i]); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (find(i) == find(j)) continue;
            if (leq(work.elements[i], work.elements[j], caps) ||
                leq(work.elements[j], work.elements[i], caps))
                rep[std::max(find(i), find(j))] = std::min(find(i), find(j));
        }
    std::map<std::string, int> key_to_work;
    for (int i = 0; i < n; ++i) key_to_work[contraction_key(work.elements[i])] = i;
    std::map<int, std::vector<int>> groups;  // keyed by work-set representative
    for (int i = 0; i < static_cast<int>(s.elements.size()); ++i)
        groups[find(key_to_work.at(contraction_key(s.elements[i])))].push_back(i);
    std::vector<std::vector<int>> out;  // elements are key-sorted, so class order
    for (auto& [r, members] : groups) out.push_back(members);  // by least member is deterministic
    return out;
}

// ---------------------------------------------------------------------------
// Path normalization: walk a basic nice contraction onto tau_0(e) over to
// the path alpha_e : sigma_e -> tau_0(e), one diameter-raising exchange at a
// time.  Each move contributes two chain steps:
//   alpha <= alpha_rho   (witness: contract the off-path edge {v1,v2} to v)
//   alpha_rho >= alpha'  (witness: contract the new path pair {w1,w2} to v)

struct ChainStep {
    bool dir_leq = true;  // true: previous <= result, false: previous >= result
    Contraction witness;
    Contraction result;
};

struct WitnessChain {
    Contraction start;
    std::vector<ChainStep> steps;

    const Contraction& last() const { return steps.empty() ? start : steps.back().result; }
};

// Checks every composition identity in the chain exactly.
inline bool verify_chain(const WitnessChain& chain) {
    const Contraction* prev = &chain.start;
    for (const auto& st : chain.steps) {
        if (!check_contraction(st.witness) || !check_contraction(st.result)) return false;
        if (st.dir_leq) {
            if (!(compose(st.witness, st.result) == *prev)) return false;
        } else {
            if (!(compose(st.witness, *prev) == st.result)) return false;
        }
        prev = &st.result;
    }
    return true;
}

namespace detail {

// Deterministic longest path as a vertex sequence (least endpoint pair first).
inline std::vector<int> longest_path(const AGraph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    std::vector<std::vector<int>> via(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        std::queue<int> q;
        q.push(s);
        dist[s][s] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (auto [w, f] : g.adjacent(v))
                if (dist[s][w] < 0) dist[s][w] = dist[s][v] + 1, via[s][w] = v, q.push(w);
        }
    }
    int best_u = 0, best_w = 0;
    for (int u = 0; u < n; ++u)
        for (int w = u; w < n; ++w)
            if (dist[u][w] > dist[best_u][best_w]) best_u = u, best_w = w;
    std::vector<int> path;
    for (int v = best_w; v != -1; v = via[best_u][v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace detail

inline WitnessChain normalize_to_path(const Contraction& a) {
    if (!(a.target.vertex_count() == 1 && a.target.tail_count() == 0))
        throw std::invalid_argument("normalize_to_path: target must be tau_0(e)");
    for (int v = 0; v < a.source.vertex_count(); ++v)
        if (a.source.beta(v) == 0) throw Error("NotDegreeZeroFree", "source vertex " + std::to_string(v));
    if (invariants(a.source).max_component_degree != 1)
        throw Error("NotBasic", "source has a vertex of degree > 1");

    WitnessChain chain;
    chain.start = a;
    const int e = a.source.beta_total();
    Contraction current = a;
    while (diameter(current.source) < e) {
        const AGraph& sigma = current.source;
        auto gamma = detail::longest_path(sigma);
        std::vector<char> on_path(sigma.vertex_count(), 0);
        for (int v : gamma) on_path[v] = 1;
        // least vertex id on gamma with an off-path edge (its valence is >= 3,
        // and maximality of gamma keeps it away from the endpoints)
        int v1 = -1, off_flag = -1;
        for (int v = 0; v < sigma.vertex_count() && v1 < 0; ++v) {
            if (!on_path[v]) continue;
            for (auto [w, f] : sigma.adjacent(v))
                if (!on_path[w]) {
                    v1 = v;
                    off_flag = f;
                    break;
                }
        }
        if (v1 < 0) throw std::logic_error("no branch vertex on a maximal path of a non-path tree");

        // contract {v1, v2} to a degree-2 vertex
        auto [rho, vmap_eps] = collapse_edge(sigma, off_flag);
        Contraction eps = validate_contraction({sigma, rho, vmap_eps});
        Contraction alpha_rho = validate_contraction({rho, a.target, std::vector<int>(rho.vertex_count(), 0)});
        chain.steps.push_back({true, eps, alpha_rho});

        // split v back into adjacent w1-w2 extending the image of gamma: w1
        // keeps the edge toward gamma's first endpoint and every off-path
        // flag of v; w2 takes the edge toward the other endpoint
        const int v_rho = vmap_eps[v1];
        std::vector<int> gamma_rho;
        for (int v : gamma) gamma_rho.push_back(vmap_eps[v]);
        int pos = -1;
        for (int i = 0; i < static_cast<int>(gamma_rho.size()); ++i)
            if (gamma_rho[i] == v_rho) pos = i;
        if (pos <= 0 || pos + 1 == static_cast<int>(gamma_rho.size()))
            throw std::logic_error("contracted vertex is not interior to the path");
        const int after = gamma_rho[pos + 1];

        RawGraph raw;  // vertices of rho, with v_rho split into w1 (= v_rho) and w2 (appended)
        raw.beta = rho.raw().beta;
        raw.beta[v_rho] = 1;
        raw.beta.push_back(1);
        const int w2 = static_cast<int>(raw.beta.size()) - 1;
        int flag_to_after = -1;
        for (auto [w, f] : rho.adjacent(v_rho))
            if (w == after) flag_to_after = f;
        for (int f = 0; f < rho.flag_count(); ++f) {
            raw.involution.push_back(rho.involution(f));
            raw.boundary.push_back(f == flag_to_after ? w2 : rho.boundary(f));
            raw.tail_label.push_back(rho.tail_label(f));
        }
        int nf = static_cast<int>(raw.involution.size());
        raw.involution.push_back(nf + 1);
        raw.involution.push_back(nf);
        raw.boundary.push_back(v_rho);
        raw.boundary.push_back(w2);
        raw.tail_label.push_back(0);
        raw.tail_label.push_back(0);
        AGraph sigma2 = AGraph::validate(raw);
        std::vector<int> vmap_eps2(sigma2.vertex_count());
        for (int v = 0; v < sigma2.vertex_count(); ++v) vmap_eps2[v] = (v == w2) ? v_rho : v;
        Contraction eps2 = validate_contraction({sigma2, rho, vmap_eps2});
        Contraction alpha2 =
            validate_contraction({sigma2, a.target, std::vector<int>(sigma2.vertex_count(), 0)});
        chain.steps.push_back({false, eps2, alpha2});

        if (diameter(sigma2) != diameter(sigma) + 1)
            throw std::logic_error("exchange move failed to raise the diameter by one");
        current = alpha2;
    }
    return chain;
}

} // namespace agc
