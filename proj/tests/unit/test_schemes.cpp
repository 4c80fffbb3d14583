#include "doctest.h"

#include <algorithm>

#include "twist/schemes.hpp"

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
    Presentation<Fp2> A = presentation_A(sp.par, sp.field.zero(), sp.field.one());
    Presentation<Fp2> S = presentation_S(sp.par, sp.field.zero(), sp.field.one());
    GradedAlgebra<Fp2> GA{A, 3}, GS{S, 3};
    LineTest<Fp2> T{GA};
    std::array<ComponentSpec<Fp2>, 7> specs = component_specs(sp.par, sp.field.zero(), sp.field.one());
    ECurve C{sp, 1};
};

Split29& split29() {
    static Split29 s;
    return s;
}

const LineSchemeResult& lines29() {
    static LineSchemeResult r = line_scheme_enumerate(split29().T, split29().specs, split29().sp.field, 1);
    return r;
}

} // namespace

TEST_CASE("point table and conic identities hold symbolically") {
    auto P = symbolic_params();
    TowerField F;
    auto A = presentation_A(P, F.zero(), F.one());
    require_all(point_table_audit(A));
    require_all(conic_transport_audit(A));
    require_all(intersection_table_identities(P, F.zero(), F.one()));
}

TEST_CASE("commuting conic over a split prime") {
    auto& s = split29();
    require_all(commuting_conic_audit(s.GA, s.GS));
    require_all(point_table_audit(s.A));
    require_all(conic_transport_audit(s.A));
}

TEST_CASE("point schemes of A and S") {
    auto& s = split29();
    auto base = point_scheme(s.A, s.sp.field, false);
    auto ext = point_scheme(s.A, s.sp.field, true);
    CHECK(base.points.size() == 20);
    CHECK(ext.points.size() == 20);
    CHECK(ext.degenerate.empty());
    require_all(point_scheme_audit_A(base, ext, s.sp.par));
    auto ps = point_scheme(s.S, s.sp.field, false);
    CHECK(ps.points.size() == s.C.all_points(true).size() + 4);
    require_all(point_scheme_audit_S(ps, s.C));
}

TEST_CASE("line test on explicit pairs") {
    auto& s = split29();
    const auto& P = s.sp.par;
    Fp2 z = s.sp.field.zero(), o = s.sp.field.one();
    // span(y0, y1) is not a line of the scheme
    CHECK(s.T.rank({o, z, z, z}, {z, o, z, z}) == 8);
    CHECK_FALSE(is_line_of_scheme(s.T, {o, z, z, z}, {z, o, z, z}).line);
    // span(i y0 + bc y1, c y2 + ib y3) is
    auto chk = is_line_of_scheme(s.T, {P.i, P.b * P.c, z, z}, {z, z, P.c, P.i * P.b});
    CHECK(chk.line);
    CHECK(chk.rank == 7);
    CHECK_THROWS(is_line_of_scheme(s.T, {o, z, z, z}, {o + o, z, z, z}));
}

TEST_CASE("line scheme enumeration over F_29") {
    auto& s = split29();
    const auto& R = lines29();
    CHECK(R.scanned == 733382);
    CHECK(R.hits.size() == 192);
    CHECK(R.unmatched.empty());
    CHECK(R.multi.size() == 24);
    for (int c = 0; c < 4; ++c) CHECK(R.counts[c] == 30);
    for (int c = 4; c < 7; ++c) CHECK(R.counts[c] == 32);
    require_all(line_scheme_audit(R, s.specs, s.sp.par, s.sp.field));
}

TEST_CASE("parallel enumeration matches the serial one") {
    auto& s = split29();
    auto R2 = line_scheme_enumerate(s.T, s.specs, s.sp.field, 3);
    CHECK(R2.json().dump() == lines29().json().dump());
}

TEST_CASE("elliptic lines from fat point modules") {
    auto& s = split29();
    require_all(elliptic_component_audit(s.C, s.T, s.specs));
    for (auto& l : elliptic_lines(s.C, s.T, s.specs)) {
        CHECK(l.rank == 7);
        CHECK(std::find(l.tags.begin(), l.tags.end(), 3 + l.family) != l.tags.end());
        CHECK(l.tags.size() <= 2);
    }
}

TEST_CASE("component dimensions and degrees") { require_all(component_degree_audit(split29().specs)); }

TEST_CASE("quartics cut out the line scheme") {
    auto& s = split29();
    auto Q = quartics_in_plucker(s.T, s.sp.field, 1);
    CHECK(Q.quartics.size() == 45);
    CHECK(Q.consistent);
    require_all(quartic_audit(Q, lines29(), s.T, s.sp.par, s.sp.field, 1));
    auto dd = quartic_certificate(Q);
    CHECK(dd.dim == 1);
    CHECK(dd.degree == 20);
}

TEST_CASE("component membership is exclusive away from the intersection table") {
    auto& s = split29();
    for (auto& h : lines29().hits) {
        auto tag = component_membership(s.specs, h.z);
        if (h.tags.size() == 1) CHECK(tag.value_or(-1) == h.tags[0]);
        else {
            CHECK_FALSE(tag.has_value());
            CHECK(h.tags.size() == 2);
        }
    }
}
