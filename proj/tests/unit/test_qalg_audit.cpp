#include "doctest.h"

#include "twist/qalg_audit.hpp"

using namespace tw;

namespace {

template <class E>
void require_all(const AuditReport& r) {
    for (const auto& it : r.items) {
        INFO(r.name << "." << it.name << " " << it.detail.dump());
        CHECK(it.pass);
    }
}

} // namespace

TEST_CASE("central elements and pencil over split primes") {
    for (int p : {29, 37}) {
        auto sp = specialize_params(p, 1, true);
        const auto& F = sp.field;
        auto S = GradedAlgebra<Fp2>(presentation_S(sp.par, F.zero(), F.one()), 4);
        auto A = GradedAlgebra<Fp2>(presentation_A(sp.par, F.zero(), F.one()), 4);
        require_all<Fp2>(central_elements_audit(S, A));
        auto pen = central_pencil_audit(S);
        require_all<Fp2>(pen);
        CHECK(pen.items.front().erratum);
        require_all<Fp2>(h4_group_audit(S.pres(), A.pres()));
        require_all<Fp2>(gamma_invariant_audit(S, A, 3));
    }
}

TEST_CASE("central elements and H4 identities symbolically") {
    auto P = symbolic_params();
    TowerField F;
    auto S = GradedAlgebra<Tower>(presentation_S(P, F.zero(), F.one()), 3);
    auto A = GradedAlgebra<Tower>(presentation_A(P, F.zero(), F.one()), 3);
    require_all<Tower>(central_elements_audit(S, A));
    require_all<Tower>(central_pencil_audit(S));
    require_all<Tower>(h4_group_audit(S.pres(), A.pres()));
}

TEST_CASE("multiplication is associative on random triples") {
    auto sp = specialize_params(29, 3, true);
    const auto& F = sp.field;
    GradedAlgebra<Fp2> S(presentation_S(sp.par, F.zero(), F.one()), 5);
    std::mt19937_64 rng(5);
    auto rnd = [&](int n) {
        Vec<Fp2> v(S.dim(n), F.zero());
        for (auto& x : v) x = F.random(rng);
        return v;
    };
    for (int t = 0; t < 20; ++t) {
        int a = int(rng() % 2) + 1, b = int(rng() % 2), c = int(rng() % 2) + 1;
        auto x = rnd(a), y = rnd(b), z = rnd(c);
        auto l = S.mul(S.mul(x, a, y, b), a + b, z, c);
        auto r = S.mul(x, a, S.mul(y, b, z, c), b + c);
        CHECK(l == r);
    }
}
