#include "doctest.h"

#include "twist/incidence.hpp"

using namespace tw;

namespace {

void require_all(const AuditReport& r) {
    for (const auto& it : r.items) {
        INFO(r.name << "." << it.name << " " << it.detail.dump());
        CHECK(it.pass);
    }
}

struct Ctx {
    IncidenceContext X{29, 1, 5, 2};
    PointIncidence I = point_incidence(X);
    std::vector<FatSample> F = fat_samples(X, 4);
};

Ctx& ctx() {
    static Ctx c;
    return c;
}

} // namespace

TEST_CASE("lines through the twenty points") {
    auto& c = ctx();
    for (int idx = 0; idx < 20; ++idx) {
        INFO("point " << idx);
        CHECK(c.I.total[idx] == 6);
        for (int e = 4; e < 7; ++e) CHECK(c.I.counts[idx][e] == (idx < 4 ? 2u : 1u));
        for (int k = 0; k < 4; ++k) CHECK(c.I.counts[idx][k] == (idx < 4 || idx / 4 - 1 == k ? 0u : 1u));
    }
    require_all(conic_point_incidence(c.X, c.I));
    require_all(elliptic_point_incidence(c.X, c.I));
}

TEST_CASE("lines through a point agree with the enumeration") {
    auto& c = ctx();
    const auto& hits = c.X.lines().hits;
    CHECK(hits.size() == 192);
    for (int idx = 4; idx < 20; ++idx) {
        size_t on = 0;
        for (auto& h : hits) {
            bool in = true;
            for (auto& w : h.rows) {
                Fp2 s = c.X.zero;
                for (int k = 0; k < 4; ++k) s += w[k] * c.X.point(idx)[k];
                in = in && s.is_zero();
            }
            on += in;
        }
        size_t rational = 0;
        for (int k = 0; k < 7; ++k)
            for (auto& z : c.I.through[idx].lines[k]) {
                bool r = true;
                for (auto& x : z) r = r && x.in_base();
                rational += r;
            }
        CHECK(on == rational);
    }
}

TEST_CASE("fat points") {
    auto& c = ctx();
    CHECK(c.F.size() >= 10);
    require_all(fat_incidence(c.X, c.F));
}

TEST_CASE("intersections, quadrics and symmetry") {
    auto& c = ctx();
    require_all(intersection_table_audit(c.X));
    auto q = quadric_audit(c.X, c.I);
    require_all(q);
    auto P = symbolic_params();
    TowerField T;
    auto sym = quadric_ruling_identities(P, T.zero(), T.one());
    require_all(sym);
    size_t errata = 0;
    for (auto& it : sym.items) errata += it.erratum;
    CHECK(errata == 1);
    require_all(gamma_invariance_audit(c.X, c.I));
    require_all(hom_membership_audit(c.X));
}

TEST_CASE("exact sequences") {
    auto& c = ctx();
    auto r = exact_sequence_audit(c.X, c.I, c.F);
    require_all(r);
    for (auto& it : r.items)
        if (it.detail.contains("pairs")) CHECK(it.detail["pairs"].get<size_t>() >= 12);
}

TEST_CASE("reports are deterministic") {
    auto& c = ctx();
    auto a = incidence_json(c.X, c.I, c.F).dump();
    Ctx d;
    CHECK(a == incidence_json(d.X, d.I, d.F).dump());
    auto md = incidence_markdown(c.X, c.I, c.F);
    CHECK(md.find("| P0.0 |") != std::string::npos);
    CHECK(md.find("fat points") != std::string::npos);
}
