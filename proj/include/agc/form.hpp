#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "agc/field.hpp"
#include "agc/rng.hpp"

namespace agc {

// A homogeneous polynomial over a finite field, stored as a sparse map from
// exponent vectors to nonzero coefficients.  The zero form keeps its declared
// degree and variable count.
class Form {
public:
    Form(FiniteField field, int nvars, int degree)
        : field_(std::move(field)), nvars_(nvars), degree_(degree) {
        if (nvars < 1 || degree < 0) throw std::invalid_argument("bad form shape");
    }

    const FiniteField& field() const { return field_; }
    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, FFElem>& terms() const { return terms_; }

    // Accumulate a coefficient; enforces homogeneity of every monomial.
    void add_term(const std::vector<int>& exp, const FFElem& coef) {
        if (static_cast<int>(exp.size()) != nvars_) throw std::invalid_argument("exponent arity");
        int total = 0;
        for (int e : exp) {
            if (e < 0) throw std::invalid_argument("negative exponent");
            total += e;
        }
        if (total != degree_) throw std::invalid_argument("monomial degree breaks homogeneity");
        auto it = terms_.find(exp);
        FFElem next = field_.add(it == terms_.end() ? field_.zero() : it->second, coef);
        if (field_.is_zero(next)) {
            if (it != terms_.end()) terms_.erase(it);
        } else {
            terms_[exp] = next;
        }
    }

    FFElem eval(std::span<const FFElem> point) const {
        if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("point arity");
        FFElem acc = field_.zero();
        for (const auto& [exp, coef] : terms_) {
            FFElem term = coef;
            for (int i = 0; i < nvars_; ++i)
                for (int e = 0; e < exp[i]; ++e) term = field_.mul(term, point[i]);
            acc = field_.add(acc, term);
        }
        return acc;
    }

    Form scaled(const FFElem& s) const {
        Form out(field_, nvars_, degree_);
        for (const auto& [exp, coef] : terms_) {
            FFElem c = field_.mul(coef, s);
            if (!field_.is_zero(c)) out.terms_[exp] = c;
        }
        return out;
    }

    static Form add(const Form& a, const Form& b) {
        require_compatible(a, b, true);
        Form out = a;
        for (const auto& [exp, coef] : b.terms_) out.add_term(exp, coef);
        return out;
    }

    static Form mul(const Form& a, const Form& b) {
        require_compatible(a, b, false);
        Form out(a.field_, a.nvars_, a.degree_ + b.degree_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                std::vector<int> exp(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) exp[i] = ea[i] + eb[i];
                out.add_term(exp, a.field_.mul(ca, cb));
            }
        return out;
    }

    // Substitute variable i by the linear form rows[i] over new_nvars
    // variables; linear substitution keeps the degree.
    Form substitute_linear(const std::vector<std::vector<FFElem>>& rows, int new_nvars) const {
        if (static_cast<int>(rows.size()) != nvars_) throw std::invalid_argument("substitution arity");
        Form out(field_, new_nvars, degree_);
        for (const auto& [exp, coef] : terms_) {
            Form term(field_, new_nvars, 0);
            term.add_term(std::vector<int>(new_nvars, 0), coef);
            for (int i = 0; i < nvars_; ++i) {
                if (exp[i] == 0) continue;
                Form lin(field_, new_nvars, 1);
                for (int j = 0; j < new_nvars; ++j) {
                    if (field_.is_zero(rows[i][j])) continue;
                    std::vector<int> e(new_nvars, 0);
                    e[j] = 1;
                    lin.add_term(e, rows[i][j]);
                }
                for (int rep = 0; rep < exp[i]; ++rep) term = mul(term, lin);
            }
            for (const auto& [e2, c2] : term.terms_) out.add_term(e2, c2);
        }
        return out;
    }

    Form partial(int var) const {
        if (var < 0 || var >= nvars_) throw std::invalid_argument("variable index");
        Form out(field_, nvars_, degree_ > 0 ? degree_ - 1 : 0);
        if (degree_ == 0) return out;
        for (const auto& [exp, coef] : terms_) {
            if (exp[var] == 0) continue;
            std::vector<int> e = exp;
            --e[var];
            out.add_term(e, field_.mul(coef, field_.from_int(exp[var])));
        }
        return out;
    }

    // Coefficient form of x_last^(degree - i): the terms of total degree i in
    // the remaining variables.  Splitting a form this way mirrors expanding
    // it in powers of the last coordinate.
    Form component_without_last(int i) const {
        Form out(field_, nvars_ - 1, i);
        for (const auto& [exp, coef] : terms_) {
            if (exp[nvars_ - 1] != degree_ - i) continue;
            std::vector<int> e(exp.begin(), exp.end() - 1);
            out.add_term(e, coef);
        }
        return out;
    }

    // Coefficient-wise transport along a field embedding.
    Form mapped(const FiniteField& big, const FieldEmbedding& phi) const {
        Form out(big, nvars_, degree_);
        for (const auto& [exp, coef] : terms_) out.add_term(exp, phi.map(coef));
        return out;
    }

    // Uniform nonzero form of the given shape.
    static Form random(const FiniteField& field, int nvars, int degree, Rng& rng) {
        for (;;) {
            Form out(field, nvars, degree);
            std::vector<int> exp(nvars, 0);
            std::function<void(int, int)> rec = [&](int var, int left) {
                if (var == nvars - 1) {
                    exp[var] = left;
                    FFElem c = field.from_index(rng.below(field.size()));
                    if (!field.is_zero(c)) out.add_term(exp, c);
                    return;
                }
                for (int e = 0; e <= left; ++e) {
                    exp[var] = e;
                    rec(var + 1, left - e);
                }
            };
            rec(0, degree);
            if (!out.is_zero()) return out;
        }
    }

    bool operator==(const Form& o) const {
        return nvars_ == o.nvars_ && degree_ == o.degree_ && terms_ == o.terms_;
    }

private:
    static void require_compatible(const Form& a, const Form& b, bool same_degree) {
        if (!a.field_.same_field(b.field_) || a.nvars_ != b.nvars_)
            throw std::invalid_argument("forms live in different rings");
        if (same_degree && a.degree_ != b.degree_)
            throw std::invalid_argument("forms have different degrees");
    }

    FiniteField field_;
    int nvars_;
    int degree_;
    std::map<std::vector<int>, FFElem> terms_;
};

} // namespace agc
