#pragma once

#include <map>
#include <string>
#include <vector>

#include "agc/canonical.hpp"
#include "agc/graph.hpp"

namespace agc {

// Rooted tree shapes on n vertices via Beyer-Hedetniemi level sequences,
// returned as parent arrays (parent[0] == -1, parent[i] < i).
inline std::vector<std::vector<int>> rooted_trees(int n) {
    std::vector<std::vector<int>> out;
    if (n <= 0) return out;
    std::vector<int> L(n);
    for (int i = 0; i < n; ++i) L[i] = i + 1;  // the path
    auto emit = [&]() {
        std::vector<int> parent(n, -1);
        for (int i = 1; i < n; ++i)
            for (int j = i - 1; j >= 0; --j)
                if (L[j] == L[i] - 1) {
                    parent[i] = j;
                    break;
                }
        out.push_back(parent);
    };
    for (;;) {
        emit();
        int p = -1;
        for (int i = n - 1; i >= 0; --i)
            if (L[i] > 2) {
                p = i;
                break;
            }
        if (p < 0) return out;
        int q = -1;
        for (int i = p - 1; i >= 0; --i)
            if (L[i] == L[p] - 1) {
                q = i;
                break;
            }
        for (int i = p; i < n; ++i) L[i] = L[i - (p - q)];
    }
}

inline AGraph graph_from_parents(const std::vector<int>& parent, const std::vector<int>& beta) {
    RawGraph raw;
    raw.beta = beta;
    for (int i = 1; i < static_cast<int>(parent.size()); ++i) {
        int f = static_cast<int>(raw.involution.size());
        raw.involution.push_back(f + 1);
        raw.involution.push_back(f);
        raw.boundary.push_back(parent[i]);
        raw.boundary.push_back(i);
        raw.tail_label.push_back(0);
        raw.tail_label.push_back(0);
    }
    return AGraph::validate(raw);
}

// Unlabeled free tree shapes on n vertices (parent arrays, one per
// isomorphism class).  Counts: 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, ...
inline std::vector<std::vector<int>> free_trees(int n) {
    std::vector<std::vector<int>> out;
    if (n <= 0) return out;
    std::map<std::string, std::vector<int>> seen;
    for (const auto& parent : rooted_trees(n)) {
        AGraph bare = graph_from_parents(parent, std::vector<int>(n, 0));
        seen.emplace(canonical_form(bare), parent);
    }
    for (auto& [key, parent] : seen) out.push_back(parent);
    return out;
}

} // namespace agc
