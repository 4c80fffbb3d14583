#include "doctest.h"

#include "twist/cpoly.hpp"

using namespace tw;

namespace {

struct Ctx {
    FpField F{101};
    std::vector<std::string> names;
    Poly<Fp2> P(const std::string& s) const {
        return parse_poly<Fp2>(s, names, [&](long long v) { return F.from_int(v); }, F.zero());
    }
};

} // namespace

TEST_CASE("single monomial basis") {
    Ctx c{FpField(101), {"x", "y"}};
    auto G = buchberger<Fp2>({c.P("x")});
    REQUIRE(G.g.size() == 1);
    CHECK(G.g[0] == c.P("x"));
}

TEST_CASE("membership after hand reduction") {
    Ctx c{FpField(101), {"x", "y"}};
    auto G = buchberger<Fp2>({c.P("x*y - 1"), c.P("y^2 - 1")});
    CHECK(G.contains(c.P("x^2 - 1")));
    CHECK(G.contains(c.P("x - y")));
    CHECK(!G.contains(c.P("x - 1")));
    for (auto& g : {c.P("x*y - 1"), c.P("y^2 - 1")}) CHECK(G.contains(g));
}

TEST_CASE("s-polynomials reduce to zero on the output") {
    Ctx c{FpField(101), {"x", "y", "z", "w"}};
    std::vector<Poly<Fp2>> gens = {c.P("x^2 - y*z"), c.P("x*y - z*w"), c.P("y^2 - x*w + 3*z^2")};
    auto G = buchberger(gens);
    for (size_t i = 0; i < G.g.size(); ++i)
        for (size_t j = i + 1; j < G.g.size(); ++j) {
            auto& f = G.g[i];
            auto& g = G.g[j];
            Mono l = f.lm().lcm(g.lm());
            auto s = f.mul_term(f.lm().quotient_of(l), g.lc()) - g.mul_term(g.lm().quotient_of(l), f.lc());
            CHECK(G.normal_form(s).is_zero());
        }
    for (auto& g : gens) CHECK(G.contains(g));
}

TEST_CASE("minor counts") {
    FpField F(31);
    std::mt19937_64 rng(3);
    auto lin = [&](int n) {
        Poly<Fp2> p(n, F.zero());
        for (int k = 0; k < n; ++k) p = p + Poly<Fp2>::var(n, k, F.random_base(rng), F.zero());
        return p;
    };
    std::vector<std::vector<Poly<Fp2>>> m64(6, std::vector<Poly<Fp2>>(4));
    for (auto& r : m64)
        for (auto& e : r) e = lin(4);
    CHECK(minors(m64, 4).size() == 15);
    std::vector<std::vector<Poly<Fp2>>> m810(8, std::vector<Poly<Fp2>>(10));
    for (auto& r : m810)
        for (auto& e : r) e = Poly<Fp2>::constant(2, F.random_base(rng), F.zero());
    CHECK(minors(m810, 8).size() == 45);
    // rank 2 scalar matrix has vanishing 3x3 minors
    std::vector<std::vector<Poly<Fp2>>> r2(4, std::vector<Poly<Fp2>>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r2[i][j] = Poly<Fp2>::constant(1, F.from_int((i + 1) * (j + 2) + (i * i) * j), F.zero());
    for (auto& x : minors(r2, 3)) CHECK(x.is_zero());
}

TEST_CASE("twisted cubic has dimension one and degree three") {
    Ctx c{FpField(101), {"x0", "x1", "x2", "x3"}};
    std::vector<std::vector<Poly<Fp2>>> m = {{c.P("x0"), c.P("x1"), c.P("x2")}, {c.P("x1"), c.P("x2"), c.P("x3")}};
    auto dd = proj_dim_degree(minors(m, 2), 4);
    CHECK(dd.dim == 1);
    CHECK(dd.degree == 3);
    auto unit = proj_dim_degree<Fp2>({c.P("x0^2"), c.P("x1"), c.P("x2"), c.P("x3")}, 4);
    CHECK(unit.empty);
    CHECK_THROWS(proj_dim_degree<Fp2>({c.P("x0^2 + x1")}, 4));
    // a complete intersection of two quadrics: (1, 4)
    auto ci = proj_dim_degree<Fp2>({c.P("x0^2+x1^2+x2^2+x3^2"), c.P("x0^2+2*x1^2+5*x2^2+7*x3^2")}, 4);
    CHECK(ci.dim == 1);
    CHECK(ci.degree == 4);
    // embedded point at the origin is removed by saturation
    auto sat = saturate_by_variable<Fp2>({c.P("x0*x1"), c.P("x0*x2")}, 0);
    CHECK(sat.contains(c.P("x1")));
    CHECK(sat.contains(c.P("x2")));
}

TEST_CASE("normal form is idempotent and linear") {
    Ctx c{FpField(101), {"x", "y", "z"}};
    auto G = buchberger<Fp2>({c.P("x^2 - y*z + 1"), c.P("y^3 - x*z"), c.P("x*y*z - 2")});
    std::mt19937_64 rng(9);
    auto rnd = [&]() {
        Poly<Fp2> p(3, c.F.zero());
        for (int t = 0; t < 6; ++t) {
            Mono m;
            for (int k = 0; k < 3; ++k) {
                m.e[k] = uint8_t(rng() % 4);
                m.deg += m.e[k];
            }
            p = p + Poly<Fp2>::monomial(3, m, c.F.random(rng), c.F.zero());
        }
        return p;
    };
    for (int t = 0; t < 100; ++t) {
        auto f = rnd(), g = rnd();
        auto s = c.F.random(rng);
        auto nf = G.normal_form(f);
        CHECK(G.normal_form(nf) == nf);
        CHECK(G.normal_form(f + g.scale(s)) == nf + G.normal_form(g).scale(s));
    }
}

TEST_CASE("hilbert function of monomial ideals") {
    Mono x2, y;
    x2.e[0] = 2;
    x2.deg = 2;
    y.e[1] = 1;
    y.deg = 1;
    auto hf = hilbert_function({x2, y}, 3, 4);
    // k[x,y,z]/(x^2, y): 1, 2, 2, 2, 2
    CHECK(hf == std::vector<long long>{1, 2, 2, 2, 2});
}

TEST_CASE("printing and parsing round trip") {
    Ctx c{FpField(101), {"z01", "z02", "z03", "z12", "z13", "z23"}};
    auto p = c.P("z01*z23 - z02*z13 + z03*z12");
    CHECK(c.P(p.str(c.names)) == p);
    CHECK_THROWS(c.P("z01 + q"));
}
