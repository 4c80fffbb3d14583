#include "doctest.h"

#include <random>

#include "twist/params.hpp"
#include "twist/tower.hpp"

using namespace tw;

TEST_CASE("tower reduce rewrites c squared") {
    CHECK(tower_reduce("c*c") == tower_reduce("-(a^2+b^2)/(1+a^2*b^2)"));
    CHECK(tower_reduce("i*i") == Tower(-1));
    CHECK(tower_reduce("(a+c)*(a-c)") == tower_reduce("a^2 + (a^2+b^2)/(1+a^2 b^2)"));
    CHECK(tower_reduce("alpha+beta+gamma+alpha*beta*gamma").is_zero());
}

TEST_CASE("tower serialization round trips") {
    std::mt19937_64 rng(5);
    TowerField T;
    for (int k = 0; k < 50; ++k) {
        Tower x = T.random(rng);
        Tower y = tower_reduce(x.str());
        CHECK(x == y);
        CHECK(tower_reduce(y.str()) == y);
    }
}

TEST_CASE("tower is a field on random samples") {
    std::mt19937_64 rng(11);
    TowerField T;
    for (int k = 0; k < 100; ++k) {
        Tower x = T.random(rng), y = T.random(rng), z = T.random(rng);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        if (!x.is_zero()) CHECK(x * x.inv() == Tower(1));
    }
}

TEST_CASE("division by zero is rejected") {
    CHECK_THROWS(tower_reduce("1/(a-a)"));
    CHECK_THROWS(tower_reduce("1/(c*c + (a^2+b^2)/(1+a^2*b^2))"));
}

TEST_CASE("specialized fields satisfy the constraint") {
    for (uint32_t p : {13u, 29u, 37u}) {
        for (uint64_t seed : {1ull, 2ull, 7ull}) {
            auto sp = specialize_params(p, seed, false);
            const auto& P = sp.par;
            CHECK(constraint_value(P).is_zero());
            CHECK((P.i * P.i) == -sp.field.one());
            CHECK(P.a * P.a == P.alpha);
            CHECK(P.c * P.c == P.gamma);
            CHECK(P.alpha.in_base());
            CHECK(P.beta.in_base());
        }
    }
    auto s1 = specialize_params(29, 3, true);
    auto s2 = specialize_params(29, 3, true);
    CHECK(s1.par.a == s2.par.a);
    CHECK(s1.par.a.in_base());
    CHECK(s1.par.c.in_base());
}

TEST_CASE("small prime has the field but no admissible tuple") {
    FpField F(5);
    CHECK(F.size() == 25);
    Fp2 i;
    CHECK((-F.one()).sqrt(i));
    CHECK(i * i == -F.one());
    CHECK_THROWS_AS(specialize_params(5, 1, false), ExhaustedError);
}

TEST_CASE("F_p^2 field axioms on random triples") {
    FpField F(29);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 1000; ++k) {
        Fp2 x = F.random(rng), y = F.random(rng), z = F.random(rng);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + (-x) == F.zero());
        if (!x.is_zero()) CHECK(x * x.inv() == F.one());
        Fp2 r;
        if ((x * x).sqrt(r)) CHECK(r * r == x * x);
    }
}
