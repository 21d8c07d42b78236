#include <doctest.h>

#include <set>

#include "agc/field.hpp"
#include "agc/rng.hpp"

using namespace agc;

TEST_CASE("prime fields behave like Z/p") {
    FiniteField F(7, 1);
    CHECK(F.size() == 7);
    CHECK(F.index(F.add(F.from_int(5), F.from_int(4))) == 2);
    CHECK(F.index(F.mul(F.from_int(3), F.from_int(5))) == 1);
    CHECK(F.index(F.neg(F.from_int(2))) == 5);
    CHECK(F.index(F.inv(F.from_int(3))) == 5);  // 3*5 = 15 = 1 mod 7
    CHECK(F.index(F.from_int(-1)) == 6);
}

TEST_CASE("F_4 multiplication matches the standard table") {
    FiniteField F(2, 2);
    CHECK(F.size() == 4);
    // modulus is x^2 + x + 1, the only irreducible monic quadratic over F_2
    CHECK(F.modulus()[0] == 1);
    CHECK(F.modulus()[1] == 1);
    CHECK(F.modulus()[2] == 1);
    FFElem t = F.from_index(2);  // the generator t
    CHECK(F.index(F.mul(t, t)) == 3);            // t^2 = t + 1
    CHECK(F.index(F.mul(t, F.from_index(3))) == 1);  // t * (t+1) = t^2 + t = 1
}

TEST_CASE("field axioms hold on sampled triples") {
    for (auto [p, k] : {std::pair{5, 2}, std::pair{3, 3}, std::pair{7, 2}, std::pair{2, 4}}) {
        FiniteField F(p, k);
        Rng rng(42);
        for (int i = 0; i < 200; ++i) {
            FFElem a = F.from_index(rng.below(F.size()));
            FFElem b = F.from_index(rng.below(F.size()));
            FFElem c = F.from_index(rng.below(F.size()));
            CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.add(a, b) == F.add(b, a));
            if (!F.is_zero(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
        }
    }
}

TEST_CASE("every nonzero element of small fields inverts") {
    for (auto [p, k] : {std::pair{5, 1}, std::pair{5, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
        FiniteField F(p, k);
        for (std::uint64_t i = 1; i < F.size(); ++i) {
            FFElem a = F.from_index(i);
            CHECK(F.mul(a, F.inv(a)) == F.one());
        }
    }
}

TEST_CASE("the modulus really is irreducible: no roots, no small factors") {
    // a reducible degree-k polynomial over F_p with k <= 4 always has a
    // factor of degree <= 2, hence (for k <= 3) a root, so spot-check roots
    for (auto [p, k] : {std::pair{5, 2}, std::pair{7, 3}, std::pair{31, 2}, std::pair{3, 4}}) {
        FiniteField F(p, k);
        const auto& m = F.modulus();
        for (int x = 0; x < p; ++x) {
            long long acc = 0, pw = 1;
            for (int i = 0; i <= k; ++i) {
                acc = (acc + m[i] * pw) % p;
                pw = (pw * x) % p;
            }
            CHECK(acc != 0);
        }
    }
}

TEST_CASE("frobenius fixes exactly the prime field") {
    FiniteField F(5, 2);
    int fixed = 0;
    for (std::uint64_t i = 0; i < F.size(); ++i) {
        FFElem a = F.from_index(i);
        if (F.pow(a, 5) == a) ++fixed;
    }
    CHECK(fixed == 5);
}

TEST_CASE("embedding into an extension is a ring homomorphism") {
    FiniteField F(5, 2), E(5, 4);
    FieldEmbedding phi(F, E);
    CHECK(phi.map(F.one()) == E.one());
    CHECK(phi.map(F.zero()) == E.zero());
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        FFElem a = F.from_index(rng.below(F.size()));
        FFElem b = F.from_index(rng.below(F.size()));
        CHECK(phi.map(F.add(a, b)) == E.add(phi.map(a), phi.map(b)));
        CHECK(phi.map(F.mul(a, b)) == E.mul(phi.map(a), phi.map(b)));
    }
    // injective on a full scan of the small field
    std::set<std::uint64_t> images;
    for (std::uint64_t i = 0; i < F.size(); ++i) images.insert(E.index(phi.map(F.from_index(i))));
    CHECK(images.size() == F.size());
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(FiniteField(4, 1), std::invalid_argument);   // not prime
    CHECK_THROWS_AS(FiniteField(37, 1), std::invalid_argument);  // too large
    CHECK_THROWS_AS(FiniteField(5, 5), std::invalid_argument);   // degree cap
    CHECK_NOTHROW(FiniteField(31, 4));
}

TEST_CASE("index round trip") {
    FiniteField F(3, 3);
    for (std::uint64_t i = 0; i < F.size(); ++i) CHECK(F.index(F.from_index(i)) == i);
}
