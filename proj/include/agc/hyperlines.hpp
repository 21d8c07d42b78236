#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "agc/form.hpp"
#include "agc/projective.hpp"
#include "agc/rng.hpp"

namespace agc {

// Point-evaluation budget, cumulative over one public operation; exhausted
// scans abort instead of running away.  Operations that take a Budget*
// fall back to a fresh default-sized budget when handed nullptr.
struct Budget {
    std::uint64_t limit = 1'000'000;
    std::uint64_t used = 0;

    void charge(std::uint64_t n) {
        used += n;
        if (used > limit)
            throw Error("FieldTooLarge", "scan needs " + std::to_string(used) +
                                             " point evaluations, budget is " + std::to_string(limit));
    }
};

namespace detail {

inline std::vector<std::vector<FFElem>> invert_matrix(const FiniteField& F,
                                                      std::vector<std::vector<FFElem>> m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<FFElem>> inv(n, std::vector<FFElem>(n, F.zero()));
    for (int i = 0; i < n; ++i) inv[i][i] = F.one();
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!F.is_zero(m[r][col])) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::invalid_argument("matrix is singular");
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        FFElem s = F.inv(m[col][col]);
        for (int j = 0; j < n; ++j) m[col][j] = F.mul(m[col][j], s), inv[col][j] = F.mul(inv[col][j], s);
        for (int r = 0; r < n; ++r) {
            if (r == col || F.is_zero(m[r][col])) continue;
            FFElem f = m[r][col];
            for (int j = 0; j < n; ++j) {
                m[r][j] = F.sub(m[r][j], F.mul(f, m[col][j]));
                inv[r][j] = F.sub(inv[r][j], F.mul(f, inv[col][j]));
            }
        }
    }
    return inv;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Expanding a hypersurface around one of its points

// The expansion of phi around p: after a linear change of coordinates taking
// p to [0:...:0:1], phi splits as sum_i Phi_(d-i) x_n^i with Phi_i of degree
// i in the remaining n variables.  The common zeros of the components in
// P^(n-1) are exactly the lines on the hypersurface through p.
struct PointedDecomposition {
    std::vector<Form> components;                 // Phi_1 .. Phi_d, n variables each
    std::vector<std::vector<FFElem>> basis;       // columns of the coordinate change B
    std::vector<std::vector<FFElem>> basis_inv;   // rows of B^-1
};

inline PointedDecomposition decompose_at_point(const Form& phi, const Point& p) {
    const FiniteField& F = phi.field();
    const int nv = phi.nvars();
    if (static_cast<int>(p.size()) != nv) throw std::invalid_argument("point arity");
    if (!F.is_zero(phi.eval(p)))
        throw Error("PointNotOnHypersurface", "phi does not vanish at the given point");

    int pivot = -1;
    for (int i = 0; i < nv; ++i)
        if (!F.is_zero(p[i])) {
            pivot = i;
            break;
        }
    // columns: the standard vectors skipping the pivot position, then p itself
    std::vector<std::vector<FFElem>> basis;
    for (int j = 0; j < nv; ++j) {
        if (j == pivot) continue;
        std::vector<FFElem> col(nv, F.zero());
        col[j] = F.one();
        basis.push_back(col);
    }
    basis.push_back(p);

    std::vector<std::vector<FFElem>> rows(nv, std::vector<FFElem>(nv, F.zero()));
    for (int c = 0; c < nv; ++c)
        for (int r = 0; r < nv; ++r) rows[r][c] = basis[c][r];
    Form moved = phi.substitute_linear(rows, nv);

    PointedDecomposition out;
    out.basis = basis;
    out.basis_inv = detail::invert_matrix(F, rows);
    for (int i = 1; i <= phi.degree(); ++i) out.components.push_back(moved.component_without_last(i));
    if (!moved.component_without_last(0).is_zero())
        throw std::logic_error("constant component survived although phi(p) = 0");
    return out;
}

// ---------------------------------------------------------------------------
// Lines through a point, by brute-force scan

// A degree-d form restricted to a line is a binary form; the line lies on
// the hypersurface exactly when that form is identically zero.
inline Form restrict_to_line(const Form& phi, const Line& l) {
    const FiniteField& F = phi.field();
    std::vector<std::vector<FFElem>> rows(phi.nvars());
    for (int r = 0; r < phi.nvars(); ++r) rows[r] = {l.u[r], l.v[r]};
    return phi.substitute_linear(rows, 2);
}

inline std::vector<Line> lines_through_point(const Form& phi, const Point& p, Budget* budget = nullptr) {
    const FiniteField& F = phi.field();
    const int n = phi.nvars() - 1;
    if (!F.is_zero(phi.eval(p)))
        throw Error("PointNotOnHypersurface", "phi does not vanish at the given point");
    Budget local;
    Budget& b = budget ? *budget : local;
    b.charge(projective_count(F, n));
    std::map<std::vector<std::uint64_t>, Line> candidates;
    for_each_projective_point(F, n, [&](const Point& y) {
        if (y == p) return;
        Line l = line_through(F, p, y);
        candidates.emplace(line_key(F, l), l);
    });
    std::vector<Line> out;
    for (const auto& [key, l] : candidates)
        if (restrict_to_line(phi, l).is_zero()) out.push_back(l);
    return out;
}

// The direction of a line through the distinguished point: the unique point
// of the line with vanishing last coordinate in the moved frame, read in
// P^(n-1).
inline Point direction_point(const PointedDecomposition& dec, const Line& l, const FiniteField& F) {
    const int nv = static_cast<int>(l.u.size());
    auto apply_inv = [&](const Point& x) {
        Point y(nv, F.zero());
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j) y[i] = F.add(y[i], F.mul(dec.basis_inv[i][j], x[j]));
        return y;
    };
    Point yu = apply_inv(l.u), yv = apply_inv(l.v);
    Point dir(nv - 1, F.zero());
    for (int i = 0; i + 1 < nv; ++i)
        dir[i] = F.sub(F.mul(yu[i], yv[nv - 1]), F.mul(yv[i], yu[nv - 1]));
    return normalize_point(F, dir);
}

// ---------------------------------------------------------------------------
// Common zeros over extensions and the growth-based dimension readout

// Common zeros of the forms in P^(nvars-1) over the ext_degree-th extension
// of their coefficient field.  An empty list of forms cuts nothing out.
inline std::vector<Point> fiber_points(const std::vector<Form>& forms, const FiniteField& base,
                                       int nvars, int ext_degree, Budget* budget = nullptr) {
    for (const auto& f : forms)
        if (f.nvars() != nvars || !f.field().same_field(base))
            throw std::invalid_argument("forms disagree with the stated ambient ring");
    FiniteField E(base.p(), base.k() * ext_degree);
    std::vector<Form> moved;
    if (ext_degree > 1) {
        FieldEmbedding phi(base, E);
        for (const auto& f : forms) moved.push_back(f.mapped(E, phi));
    } else {
        moved = forms;
    }
    Budget local;
    Budget& b = budget ? *budget : local;
    b.charge(projective_count(E, nvars - 1));
    std::vector<Point> out;
    for_each_projective_point(E, nvars - 1, [&](const Point& pt) {
        for (const auto& f : moved)
            if (!E.is_zero(f.eval(pt))) return;
        out.push_back(pt);
    });
    return out;
}

inline std::uint64_t count_fiber_points(const std::vector<Form>& forms, const FiniteField& base,
                                        int nvars, int ext_degree, Budget* budget = nullptr) {
    return fiber_points(forms, base, nvars, ext_degree, budget).size();
}

// Growth-based dimension heuristic: a variety of dimension m has on the
// order of q^(k m) points over F_(q^k), so round(log N_k / log q^k) reads m
// off the counts.  -1 means no points were seen over any tested extension.
// Small fields can misreport; callers pin cases where the answer is provable.
inline int dimension_estimate(const std::vector<Form>& forms, const FiniteField& base, int nvars,
                              int k_max, Budget* budget = nullptr) {
    if (k_max < 1 || k_max > 3) throw std::invalid_argument("k_max must be in [1,3]");
    Budget local;
    Budget* b = budget ? budget : &local;
    std::vector<std::uint64_t> counts;
    for (int k = 1; k <= k_max; ++k) counts.push_back(count_fiber_points(forms, base, nvars, k, b));
    int k_use = 0;
    for (int k = 1; k <= k_max; ++k)
        if (counts[k - 1] > 0) k_use = k;
    if (k_use == 0) return -1;
    const double logq = std::log(static_cast<double>(base.size())) * k_use;
    return static_cast<int>(std::llround(std::log(static_cast<double>(counts[k_use - 1])) / logq));
}

// ---------------------------------------------------------------------------
// Flatness audit of the pointed-line projection

struct FiberRecord {
    Point point;
    int fiber_dim = 0;
    bool pass = false;
};

struct LineSetCheck {
    Point point;
    bool equal = false;  // direction points of actual lines == fiber equations' zeros
};

struct FlatnessReport {
    int n = 0, d = 0;
    std::string field;
    std::uint64_t seed = 0;
    int expected_rel_dim = 0;
    std::vector<FiberRecord> fibers;
    std::vector<LineSetCheck> line_checks;
    bool dims_pass = false;
    bool lines_pass = false;
    bool pass = false;
    std::string note = "finite-field evidence, not a proof over the complex numbers";
};

// For every rational point of X = V(phi): estimate the dimension of the
// scheme of lines through it and compare with n-d-1.  A sample of points is
// double-checked against the brute-force line scan.
inline FlatnessReport flatness_audit(const Form& phi, std::uint64_t seed = 0, int line_check_samples = 5,
                                     int k_max = 2, std::uint64_t budget_limit = 5'000'000) {
    const FiniteField& F = phi.field();
    const int n = phi.nvars() - 1, d = phi.degree();
    if (d < 1 || d > n - 1) throw std::invalid_argument("flatness audit needs 1 <= d <= n-1");
    Budget budget{budget_limit};

    FlatnessReport rep;
    rep.n = n;
    rep.d = d;
    rep.field = F.describe();
    rep.seed = seed;
    rep.expected_rel_dim = n - d - 1;

    std::vector<Point> xpoints;
    budget.charge(projective_count(F, n));
    for_each_projective_point(F, n, [&](const Point& pt) {
        if (F.is_zero(phi.eval(pt))) xpoints.push_back(pt);
    });

    rep.dims_pass = true;
    std::vector<PointedDecomposition> decs;
    for (const Point& pt : xpoints) {
        PointedDecomposition dec = decompose_at_point(phi, pt);
        FiberRecord rec;
        rec.point = pt;
        rec.fiber_dim = dimension_estimate(dec.components, F, n, k_max, &budget);
        rec.pass = rec.fiber_dim == rep.expected_rel_dim;
        rep.dims_pass = rep.dims_pass && rec.pass;
        rep.fibers.push_back(rec);
        decs.push_back(std::move(dec));
    }

    rep.lines_pass = true;
    Rng rng(seed);
    const int checks = std::min<int>(line_check_samples, static_cast<int>(xpoints.size()));
    for (int i = 0; i < checks; ++i) {
        const int idx = static_cast<int>(rng.below(xpoints.size()));
        LineSetCheck chk;
        chk.point = xpoints[idx];
        auto lines = lines_through_point(phi, xpoints[idx], &budget);
        auto zeros = fiber_points(decs[idx].components, F, n, 1, &budget);
        std::set<std::vector<std::uint64_t>> dir_keys, zero_keys;
        for (const auto& l : lines) dir_keys.insert(point_key(F, direction_point(decs[idx], l, F)));
        for (const auto& z : zeros) zero_keys.insert(point_key(F, z));
        chk.equal = dir_keys == zero_keys;
        rep.lines_pass = rep.lines_pass && chk.equal;
        rep.line_checks.push_back(chk);
    }
    rep.pass = rep.dims_pass && rep.lines_pass;
    return rep;
}

// All first partials vanishing marks a singular point (char does not divide
// the relevant degrees at desk scale).
inline bool is_singular_point(const Form& phi, const Point& p) {
    const FiniteField& F = phi.field();
    for (int i = 0; i < phi.nvars(); ++i)
        if (!F.is_zero(phi.partial(i).eval(p))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Codimension formulas

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct CodimFormulas {
    long long delta_codim = 0;  // C(n-1+j, n-1)
    long long by_codim = 0;     // C(n, d+1)
    bool by_exceeds = false;    // C(n, d+1) > n-1
};

inline CodimFormulas codim_formulas(int n, int d, int j) {
    if (n < 2 || j < 1 || d < 1) throw std::invalid_argument("codim_formulas out of range");
    CodimFormulas out;
    out.delta_codim = binomial(n - 1 + j, n - 1);
    out.by_codim = binomial(n, d + 1);
    out.by_exceeds = out.by_codim > n - 1;
    return out;
}

// ---------------------------------------------------------------------------
// Random-tuple statistics for the degeneracy locus

struct TupleReport {
    int n = 0, d = 0;
    std::string field;
    int samples = 0;
    std::uint64_t seed = 0;
    int expected_dim = 0;  // n-d-1
    int in_locus = 0;      // samples with estimated dimension above expected
    double fraction = 0.0;
    std::vector<int> dims;
};

// Draw tuples (X_1,...,X_d) of degrees 1..d in P^(n-1) and report how often
// the intersection dimension exceeds n-d-1.
inline TupleReport tuple_audit(const FiniteField& F, int n, int d, int samples, std::uint64_t seed,
                               int k_max = 2, std::uint64_t budget_limit = 5'000'000) {
    if (d < 1 || d > n - 1) throw std::invalid_argument("tuple audit needs 1 <= d <= n-1");
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    Budget budget{budget_limit};
    TupleReport rep;
    rep.n = n;
    rep.d = d;
    rep.field = F.describe();
    rep.samples = samples;
    rep.seed = seed;
    rep.expected_dim = n - d - 1;
    Rng root(seed);
    for (int s = 0; s < samples; ++s) {
        Rng rng = root.split(s);
        std::vector<Form> tuple;
        for (int deg = 1; deg <= d; ++deg) tuple.push_back(Form::random(F, n, deg, rng));
        int dim = dimension_estimate(tuple, F, n, k_max, &budget);
        rep.dims.push_back(dim);
        if (dim > rep.expected_dim) ++rep.in_locus;
    }
    rep.fraction = static_cast<double>(rep.in_locus) / samples;
    return rep;
}

} // namespace agc
