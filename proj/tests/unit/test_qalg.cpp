#include "doctest.h"

#include "twist/qalg.hpp"

using namespace tw;

static long binom3(int n) { return long(n + 3) * (n + 2) * (n + 1) / 6; }

TEST_CASE("hilbert function over a finite field") {
    auto sp = specialize_params(29, 1, true);
    auto F = sp.field;
    for (auto pres : {presentation_S(sp.par, F.zero(), F.one()), presentation_A(sp.par, F.zero(), F.one())}) {
        GradedAlgebra<Fp2> A(pres, 7);
        for (int n = 0; n <= 7; ++n) CHECK(A.dim(n) == size_t(binom3(n)));
        for (int n = 0; n <= 4; ++n) CHECK(tensor_quotient_dim(pres, n) == size_t(binom3(n)));
    }
}

TEST_CASE("hilbert function symbolically") {
    auto P = symbolic_params();
    TowerField T;
    for (auto pres : {presentation_S(P, T.zero(), T.one()), presentation_A(P, T.zero(), T.one())}) {
        GradedAlgebra<Tower> A(pres, 4);
        for (int n = 0; n <= 4; ++n) CHECK(A.dim(n) == size_t(binom3(n)));
    }
}
