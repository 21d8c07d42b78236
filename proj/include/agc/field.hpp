#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "agc/error.hpp"

namespace agc {

// An element of F_{p^k}, k <= 4: coefficients of 1, t, t^2, t^3 mod the
// field's modulus polynomial, always reduced into [0, p).
struct FFElem {
    std::array<std::int16_t, 4> c{};

    bool operator==(const FFElem& o) const { return c == o.c; }
    bool operator!=(const FFElem& o) const { return !(*this == o); }
};

// Desk-scale finite field F_{p^k} with p <= 31 prime and k <= 4.  The
// modulus is the lexicographically first monic irreducible of degree k,
// certified irreducible by exhaustive trial division.
class FiniteField {
public:
    FiniteField(int p, int k) : p_(p), k_(k) {
        if (p < 2 || p > 31 || !is_prime(p)) throw std::invalid_argument("p must be a prime <= 31");
        if (k < 1 || k > 4) throw std::invalid_argument("extension degree must be in [1,4]");
        find_modulus();
    }

    int p() const { return p_; }
    int k() const { return k_; }
    std::uint64_t size() const {
        std::uint64_t q = 1;
        for (int i = 0; i < k_; ++i) q *= p_;
        return q;
    }
    const std::array<std::int16_t, 5>& modulus() const { return mod_; }

    FFElem zero() const { return {}; }
    FFElem one() const {
        FFElem e;
        e.c[0] = 1;
        return e;
    }
    bool is_zero(const FFElem& a) const { return a == FFElem{}; }

    // Scalar embedding of an integer (ring map from Z).
    FFElem from_int(long long v) const {
        FFElem e;
        e.c[0] = static_cast<std::int16_t>(((v % p_) + p_) % p_);
        return e;
    }

    // Base-p digit encoding; a bijection [0, p^k) <-> field elements.
    FFElem from_index(std::uint64_t idx) const {
        FFElem e;
        for (int i = 0; i < k_; ++i) {
            e.c[i] = static_cast<std::int16_t>(idx % p_);
            idx /= p_;
        }
        if (idx != 0) throw std::invalid_argument("element index out of range");
        return e;
    }
    std::uint64_t index(const FFElem& a) const {
        std::uint64_t idx = 0;
        for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + a.c[i];
        return idx;
    }

    FFElem add(const FFElem& a, const FFElem& b) const {
        FFElem r;
        for (int i = 0; i < k_; ++i) r.c[i] = static_cast<std::int16_t>((a.c[i] + b.c[i]) % p_);
        return r;
    }
    FFElem sub(const FFElem& a, const FFElem& b) const {
        FFElem r;
        for (int i = 0; i < k_; ++i) r.c[i] = static_cast<std::int16_t>((a.c[i] - b.c[i] + p_) % p_);
        return r;
    }
    FFElem neg(const FFElem& a) const { return sub(zero(), a); }

    FFElem mul(const FFElem& a, const FFElem& b) const {
        std::array<int, 8> prod{};
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + a.c[i] * b.c[j]) % p_;
        // reduce modulo the monic modulus
        for (int d = 2 * k_ - 2; d >= k_; --d) {
            int lead = prod[d];
            if (lead == 0) continue;
            prod[d] = 0;
            for (int i = 0; i < k_; ++i)
                prod[d - k_ + i] = ((prod[d - k_ + i] - lead * mod_[i]) % p_ + p_) % p_;
        }
        FFElem r;
        for (int i = 0; i < k_; ++i) r.c[i] = static_cast<std::int16_t>(prod[i]);
        return r;
    }

    FFElem pow(FFElem a, std::uint64_t n) const {
        FFElem r = one();
        while (n) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    FFElem inv(const FFElem& a) const {
        if (is_zero(a)) throw Error("DivisionByZero", "inverse of zero");
        return pow(a, size() - 2);
    }

    bool same_field(const FiniteField& o) const { return p_ == o.p_ && k_ == o.k_ && mod_ == o.mod_; }

    std::string describe() const {
        return "F_" + std::to_string(p_) + (k_ > 1 ? "^" + std::to_string(k_) : "");
    }

private:
    static bool is_prime(int n) {
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return n >= 2;
    }

    // polynomial remainder over F_p, both vectors little-endian
    static std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p) {
        while (!a.empty() && a.back() == 0) a.pop_back();
        const int db = static_cast<int>(b.size()) - 1;
        while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
            int shift = static_cast<int>(a.size()) - 1 - db;
            // b is monic in every use below
            int factor = a.back();
            for (int i = 0; i <= db; ++i)
                a[shift + i] = ((a[shift + i] - factor * b[i]) % p + p) % p;
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        return a;
    }

    void find_modulus() {
        if (k_ == 1) {
            mod_ = {0, 1, 0, 0, 0};
            return;
        }
        std::uint64_t count = 1;
        for (int i = 0; i < k_; ++i) count *= p_;
        for (std::uint64_t lower = 0; lower < count; ++lower) {
            std::vector<int> m(k_ + 1, 0);
            std::uint64_t idx = lower;
            for (int i = 0; i < k_; ++i) {
                m[i] = static_cast<int>(idx % p_);
                idx /= p_;
            }
            m[k_] = 1;
            if (irreducible(m)) {
                for (int i = 0; i <= k_; ++i) mod_[i] = static_cast<std::int16_t>(m[i]);
                return;
            }
        }
        throw std::logic_error("no irreducible polynomial found");
    }

    // exhaustive trial division by all monic polynomials of degree 1..k/2
    bool irreducible(const std::vector<int>& m) const {
        for (int d = 1; 2 * d <= k_; ++d) {
            std::uint64_t count = 1;
            for (int i = 0; i < d; ++i) count *= p_;
            for (std::uint64_t lower = 0; lower < count; ++lower) {
                std::vector<int> div(d + 1, 0);
                std::uint64_t idx = lower;
                for (int i = 0; i < d; ++i) {
                    div[i] = static_cast<int>(idx % p_);
                    idx /= p_;
                }
                div[d] = 1;
                if (poly_rem(m, div, p_).empty()) return false;
            }
        }
        return true;
    }

    int p_, k_;
    std::array<std::int16_t, 5> mod_{};
};

// The canonical embedding of F_{p^k} into F_{p^(k*j)}: send the generator to
// the first root of the small modulus, found by scanning element indices.
class FieldEmbedding {
public:
    FieldEmbedding(const FiniteField& small, const FiniteField& big) : small_(small), big_(big) {
        if (small.p() != big.p() || big.k() % small.k() != 0)
            throw std::invalid_argument("no embedding between these fields");
        if (small.k() == 1) {
            root_ = big.from_int(0);  // unused: scalars embed directly
            return;
        }
        for (std::uint64_t i = 0; i < big.size(); ++i) {
            FFElem cand = big.from_index(i);
            FFElem acc = big.zero(), power = big.one();
            for (int d = 0; d <= small.k(); ++d) {
                acc = big.add(acc, big.mul(big.from_int(small.modulus()[d]), power));
                power = big.mul(power, cand);
            }
            if (big.is_zero(acc)) {
                root_ = cand;
                return;
            }
        }
        throw std::logic_error("modulus has no root in the extension");
    }

    FFElem map(const FFElem& a) const {
        FFElem acc = big_.zero(), power = big_.one();
        for (int i = 0; i < small_.k(); ++i) {
            acc = big_.add(acc, big_.mul(big_.from_int(a.c[i]), power));
            power = big_.mul(power, root_);
        }
        return acc;
    }

private:
    FiniteField small_, big_;
    FFElem root_{};
};

} // namespace agc
