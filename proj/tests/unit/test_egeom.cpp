#include "doctest.h"

#include "twist/egeom.hpp"

using namespace tw;

namespace {

void require_all(const AuditReport& r) {
    for (const auto& it : r.items) {
        INFO(r.name << "." << it.name << " " << it.detail.dump());
        CHECK(it.pass);
    }
}

} // namespace

TEST_CASE("curve identities hold symbolically") {
    auto P = symbolic_params();
    TowerField F;
    require_all(egeom_identity_audit(P, F.zero(), F.one()));
}

TEST_CASE("group law and quadric labels over split primes") {
    for (uint32_t p : {29u, 37u}) {
        auto sp = specialize_params(p, 1, true);
        require_all(egeom_identity_audit(sp.par, sp.field.zero(), sp.field.one()));
        ECurve C(sp, 1);
        require_all(group_law_audit(C, 1));
        require_all(quadric_labels_audit(C, 1));
    }
}

TEST_CASE("point enumeration and projective helpers") {
    auto sp = specialize_params(29, 2, true);
    ECurve C(sp, 2);
    auto base = C.all_points(true);
    for (auto& p : base) CHECK(C.on_curve(p));
    CHECK(C.points_with_x0_zero().size() == 4);
    // rational points are closed under p - q + r whatever the origin
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        auto& p = base[rng() % base.size()];
        auto& q = base[rng() % base.size()];
        auto& s = base[rng() % base.size()];
        auto r = C.add(C.sub(p, q), s);
        CHECK(r[0].in_base());
        CHECK(r[1].in_base());
        CHECK(r[2].in_base());
        CHECK(r[3].in_base());
    }
    // Hasse bound over F_p
    long long n = base.size(), pp = 29;
    CHECK((n - pp - 1) * (n - pp - 1) <= 4 * pp);
    for (int j = 1; j <= 3; ++j) {
        CHECK(proj_eq(C.mul(4, C.eps_points()[j]), C.origin()));
        CHECK(!proj_eq(C.mul(2, C.eps_points()[j]), C.origin()));
        CHECK(proj_eq(C.mul(-3, C.eps_points()[j]), C.eps_points()[j]));
    }
    const auto& F = sp.field;
    Pt<Fp2> x = {F.from_int(2), F.from_int(4), F.zero(), F.one()};
    CHECK(normalize(x)[0].is_one());
    CHECK(proj_eq(normalize(x), x));
    CHECK_THROWS(plucker_from_points(x, x));
}
