#pragma once

#include <functional>
#include <vector>

#include "agc/field.hpp"

namespace agc {

// Points of P^m(F) as normalized coordinate vectors: the first nonzero
// coordinate is scaled to 1, which makes representatives unique.
using Point = std::vector<FFElem>;

inline Point normalize_point(const FiniteField& F, Point coords) {
    int pivot = -1;
    for (int i = 0; i < static_cast<int>(coords.size()); ++i)
        if (!F.is_zero(coords[i])) {
            pivot = i;
            break;
        }
    if (pivot < 0) throw std::invalid_argument("the zero vector is not a projective point");
    FFElem s = F.inv(coords[pivot]);
    for (auto& c : coords) c = F.mul(c, s);
    return coords;
}

// Index-vector encoding; lexicographic order on these gives the canonical
// order used everywhere reports need determinism.
inline std::vector<std::uint64_t> point_key(const FiniteField& F, const Point& p) {
    std::vector<std::uint64_t> k;
    k.reserve(p.size());
    for (const auto& c : p) k.push_back(F.index(c));
    return k;
}

inline std::uint64_t projective_count(const FiniteField& F, int dim) {
    std::uint64_t total = 0, power = 1;
    for (int i = 0; i <= dim; ++i) {
        total += power;
        power *= F.size();
    }
    return total;  // (q^(dim+1) - 1)/(q - 1)
}

// Visit every point of P^dim(F) exactly once, normalized, in a fixed order.
inline void for_each_projective_point(const FiniteField& F, int dim,
                                      const std::function<void(const Point&)>& visit) {
    const std::uint64_t q = F.size();
    Point p(dim + 1, F.zero());
    for (int pivot = 0; pivot <= dim; ++pivot) {
        for (int i = 0; i < pivot; ++i) p[i] = F.zero();
        p[pivot] = F.one();
        const int free = dim - pivot;
        std::vector<std::uint64_t> digits(free, 0);
        for (;;) {
            for (int i = 0; i < free; ++i) p[pivot + 1 + i] = F.from_index(digits[i]);
            visit(p);
            int i = 0;
            while (i < free && ++digits[i] == q) digits[i++] = 0;
            if (i == free) break;
        }
    }
}

// A line in P^n as the reduced row echelon basis of its 2-dimensional cone;
// the RREF rows are unique, so equal lines compare equal.
struct Line {
    Point u, v;  // RREF rows

    bool operator==(const Line& o) const { return u == o.u && v == o.v; }
};

inline Line line_through(const FiniteField& F, const Point& a, const Point& b) {
    const int n = static_cast<int>(a.size());
    std::vector<Point> rows = {a, b};
    int rank = 0;
    for (int col = 0; col < n && rank < 2; ++col) {
        int pivot = -1;
        for (int r = rank; r < 2; ++r)
            if (!F.is_zero(rows[r][col])) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        FFElem s = F.inv(rows[rank][col]);
        for (int j = 0; j < n; ++j) rows[rank][j] = F.mul(rows[rank][j], s);
        for (int r = 0; r < 2; ++r) {
            if (r == rank || F.is_zero(rows[r][col])) continue;
            FFElem f = rows[r][col];
            for (int j = 0; j < n; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[rank][j]));
        }
        ++rank;
    }
    if (rank != 2) throw std::invalid_argument("the two points do not span a line");
    return {rows[0], rows[1]};
}

inline std::vector<std::uint64_t> line_key(const FiniteField& F, const Line& l) {
    auto k = point_key(F, l.u);
    auto k2 = point_key(F, l.v);
    k.insert(k.end(), k2.begin(), k2.end());
    return k;
}

// All q+1 points of the line, normalized.
inline std::vector<Point> points_on_line(const FiniteField& F, const Line& l) {
    std::vector<Point> pts;
    pts.push_back(normalize_point(F, l.u));
    for (std::uint64_t i = 0; i < F.size(); ++i) {
        FFElem t = F.from_index(i);
        Point p(l.u.size());
        for (int j = 0; j < static_cast<int>(l.u.size()); ++j)
            p[j] = F.add(F.mul(l.u[j], t), l.v[j]);
        pts.push_back(normalize_point(F, p));
    }
    return pts;
}

inline bool point_on_line(const FiniteField& F, const Line& l, const Point& p) {
    // rank of the 3x(n) matrix [u; v; p] stays 2 exactly when p is on the line
    std::vector<Point> rows = {l.u, l.v, p};
    const int n = static_cast<int>(p.size());
    int rank = 0;
    for (int col = 0; col < n && rank < 3; ++col) {
        int pivot = -1;
        for (int r = rank; r < 3; ++r)
            if (!F.is_zero(rows[r][col])) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        FFElem s = F.inv(rows[rank][col]);
        for (int j = 0; j < n; ++j) rows[rank][j] = F.mul(rows[rank][j], s);
        for (int r = 0; r < 3; ++r) {
            if (r == rank || F.is_zero(rows[r][col])) continue;
            FFElem f = rows[r][col];
            for (int j = 0; j < n; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[rank][j]));
        }
        ++rank;
    }
    return rank == 2;
}

} // namespace agc
