#include "doctest.h"

#include "twist/gmod.hpp"

using namespace tw;

namespace {

void require_all(const AuditReport& r) {
    for (const auto& it : r.items) {
        INFO(r.name << "." << it.name << " " << it.detail.dump());
        CHECK(it.pass);
    }
}

struct Split29 {
    Specialization sp = specialize_params(29, 1, true);
    Fp2 z = sp.field.zero(), o = sp.field.one();
    Presentation<Fp2> A = presentation_A(sp.par, z, o);
    Presentation<Fp2> S = presentation_S(sp.par, z, o);
    GradedAlgebra<Fp2> GA{A, 5}, GS{S, 5};
    ECurve C{sp, 1};
};

Split29& split29() {
    static Split29 s;
    return s;
}

std::vector<size_t> upto(std::initializer_list<size_t> v) { return v; }

} // namespace

TEST_CASE("cyclic quotients against the tensor oracle") {
    auto& s = split29();
    const auto& P = s.sp.par;
    Fp2 z = s.z, o = s.o;
    // annihilator of a point of the table gives a point module
    auto table = point_table(P, z, o);
    const auto& p = table[1][0];
    Mat<Fp2> m(1, 4, z);
    for (int k = 0; k < 4; ++k) m(0, k) = p[k];
    std::vector<Pt<Fp2>> perp;
    for (auto& v : nullspace(m, z, o)) perp.push_back({v[0], v[1], v[2], v[3]});
    auto Q = cyclic_quotient(s.GA, perp, 5);
    CHECK(Q.dims == upto({1, 1, 1, 1, 1, 1}));
    CHECK(respects_relations(Q, s.A));
    CHECK(cyclic_quotient_oracle(s.A, perp, 4) == upto({1, 1, 1, 1, 1}));
    // a commuting plane gives a line module
    auto rows = commuting_line_rows(P, o + o, o);
    std::vector<Pt<Fp2>> W{rows[0], rows[1]};
    auto L = cyclic_quotient(s.GA, W, 5);
    CHECK(L.dims == upto({1, 2, 3, 4, 5, 6}));
    CHECK(respects_relations(L, s.A));
    CHECK(cyclic_quotient_oracle(s.A, W, 4) == upto({1, 2, 3, 4, 5}));
    // span(y0, y1) is not a line module
    std::vector<Pt<Fp2>> W01{Pt<Fp2>{o, z, z, z}, Pt<Fp2>{z, o, z, z}};
    auto N = cyclic_quotient(s.GA, W01, 4);
    auto oracle = cyclic_quotient_oracle(s.A, W01, 4);
    CHECK(std::vector<size_t>(N.dims.begin(), N.dims.end()) == oracle);
    CHECK(N.dims != upto({1, 2, 3, 4, 5}));
    CHECK(respects_relations(N, s.A));
}

TEST_CASE("cyclic quotients over S agree with the oracle") {
    auto& s = split29();
    auto pts = s.C.all_points(true);
    auto W = line_forms(pts[0], pts[5], s.z, s.o);
    std::vector<Pt<Fp2>> w;
    for (size_t r = 0; r < W.rows(); ++r) w.push_back({W(r, 0), W(r, 1), W(r, 2), W(r, 3)});
    CHECK(cyclic_quotient(s.GS, w, 4).dims == cyclic_quotient_oracle(s.S, w, 4));
    CHECK(cyclic_quotient(s.GS, w, 4).dims == upto({1, 2, 3, 4, 5}));
}

TEST_CASE("point modules") {
    auto& s = split29();
    auto L = linearization(s.A);
    auto table = point_table(s.sp.par, s.z, s.o);
    auto M = point_module(L, table[0][0], 5);
    CHECK(M.dims == upto({1, 1, 1, 1, 1, 1}));
    CHECK(respects_relations(M, s.A));
    Pt<Fp2> bad{s.o, s.o + s.o, s.o + s.o + s.o, s.z};
    CHECK_THROWS(point_module(L, bad, 3));
    require_all(point_module_audit(s.GA, 5));
}

TEST_CASE("point module annihilators symbolically") {
    auto P = symbolic_params();
    TowerField F;
    GradedAlgebra<Tower> A{presentation_A(P, F.zero(), F.one()), 3};
    auto rep = point_module_audit(A, 3);
    require_all(rep);
    size_t errata = 0;
    for (auto& it : rep.items) errata += it.erratum;
    CHECK(errata == 3);
}

TEST_CASE("two-dimensional simple modules") {
    auto P = symbolic_params();
    TowerField F;
    require_all(simple2_audit(GradedAlgebra<Tower>{presentation_S(P, F.zero(), F.one()), 3}));
    auto& s = split29();
    require_all(simple2_audit(s.GS));
    require_all(simple2_line_audit(s.GS, s.C, 5, 7));
}

TEST_CASE("homomorphisms out of a secant line module") {
    auto& s = split29();
    auto pts = s.C.all_points(true);
    auto T = simple2_table(s.sp.par, s.z, s.o);
    auto V = homogenize(T[0], 5, s.z, s.o);
    CHECK(V.dims == upto({2, 2, 2, 2, 2, 2}));
    CHECK(respects_relations(V, s.S));
    size_t k = 0;
    while (proj_eq(pts[k], s.C.sub(s.C.tau(), pts[k]))) ++k;
    Pt<Fp2> p = pts[k], q = s.C.sub(s.C.tau(), p);
    auto W = line_forms(p, q, s.z, s.o);
    std::vector<Pt<Fp2>> w;
    for (size_t r = 0; r < W.rows(); ++r) w.push_back({W(r, 0), W(r, 1), W(r, 2), W(r, 3)});
    auto L = cyclic_quotient(s.GS, w, 5);
    auto h = hom0(w, V);
    REQUIRE(h.size() == 1);
    auto K = kernel_data(L, V, h[0]);
    CHECK(K.well_defined);
    CHECK(K.image_dims == upto({1, 2, 2, 2, 2, 2}));
    CHECK(K.kernel_dims == upto({0, 0, 1, 2, 3, 4}));
    CHECK(K.start == 2);
    CHECK(K.annihilator.has_value());
    // a vector outside the hom space does not extend
    Vec<Fp2> bad = h[0][1].is_zero() ? Vec<Fp2>{s.z, s.o} : Vec<Fp2>{s.o, s.z};
    CHECK_FALSE(cyclic_hom(L, V, bad).well_defined);
}

TEST_CASE("fat point modules") {
    auto& s = split29();
    require_all(fat_form_identities(s.sp.par, s.z, s.o));
    auto P = symbolic_params();
    TowerField F;
    require_all(fat_form_identities(P, F.zero(), F.one()));
    require_all(fat_point_audit(s.GA, s.C, 5, 3));
    auto LS = linearization(s.S);
    auto Ft = fat_point_module(LS, s.sp.par, s.C.tau_prime(), 4);
    CHECK(Ft.dims == upto({2, 2, 2, 2, 2}));
    CHECK(respects_relations(Ft, s.A));
    auto j = Ft.json(true);
    CHECK(j["kind"] == "fat");
    CHECK(j["action"].size() == 4);
}
