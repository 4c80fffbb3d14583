#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "twist/schemes.hpp"

namespace tw {

namespace {

using PlkKey = std::array<uint32_t, 6>;

PlkKey plk_key(const Plk<Fp2>& z) {
    PlkKey k;
    for (int i = 0; i < 6; ++i) k[i] = z[i].packed();
    return k;
}

Json plk_json(const Plk<Fp2>& z) {
    Json a = Json::array();
    for (auto& x : z) a.push_back(x.str());
    return a;
}

bool in_base(const Pt<Fp2>& p) {
    for (auto& x : p)
        if (!x.in_base()) return false;
    return true;
}

bool in_base_plk(const Plk<Fp2>& z) {
    for (auto& x : z)
        if (!x.in_base()) return false;
    return true;
}

// rank over F_p of a small row-major matrix, destroyed in place
int rank_mod_p(uint32_t* m, int R, int C, uint32_t p, const std::vector<uint32_t>& inv) {
    int rank = 0;
    for (int col = 0; col < C && rank < R; ++col) {
        int piv = -1;
        for (int r = rank; r < R; ++r)
            if (m[r * C + col]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int k = 0; k < C; ++k) std::swap(m[piv * C + k], m[rank * C + k]);
        uint32_t* pr = m + rank * C;
        uint64_t iv = inv[pr[col]];
        for (int k = col; k < C; ++k) pr[k] = uint32_t(pr[k] * iv % p);
        for (int r = rank + 1; r < R; ++r) {
            uint32_t* rr = m + r * C;
            uint64_t f = rr[col];
            if (!f) continue;
            for (int k = col; k < C; ++k) rr[k] = uint32_t((rr[k] + (p - f) * pr[k]) % p);
        }
        ++rank;
    }
    return rank;
}

struct Pattern {
    int i, j;
    std::vector<int> free1, free2;
    uint64_t count;
};

std::vector<Pattern> rref_patterns(uint32_t p) {
    std::vector<Pattern> out;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Pattern P{i, j, {}, {}, 1};
            for (int k = i + 1; k < 4; ++k)
                if (k != j) P.free1.push_back(k);
            for (int k = j + 1; k < 4; ++k) P.free2.push_back(k);
            for (size_t t = 0; t < P.free1.size() + P.free2.size(); ++t) P.count *= p;
            out.push_back(P);
        }
    return out;
}

} // namespace

Json LineSchemeResult::json() const {
    Json j;
    j["scanned"] = scanned;
    j["hits"] = hits.size();
    Json c;
    for (int k = 0; k < 7; ++k) c[kComponentNames[k]] = counts[k];
    j["per_component"] = c;
    j["unmatched"] = unmatched.size();
    j["multi_tagged"] = multi.size();
    j["rank_at_most_6"] = low_rank;
    if (quartic_certificate) {
        j["quartic_certificate"] = {{"dim", quartic_certificate->dim},
                                    {"degree", quartic_certificate->degree},
                                    {"basis_size", quartic_certificate->basis_size}};
    }
    return j;
}

LineSchemeResult line_scheme_enumerate(const LineTest<Fp2>& T, const std::array<ComponentSpec<Fp2>, 7>& specs,
                                       const FpField& F, int jobs) {
    const uint32_t p = F.p();
    const auto& inv = F.ctx()->inv_p;
    // products as F_p values
    uint32_t prod[4][4][10];
    for (int g = 0; g < 4; ++g)
        for (int h = 0; h < 4; ++h)
            for (int k = 0; k < 10; ++k) {
                const Fp2& x = T.products()[g][h][k];
                if (!x.in_base()) throw std::invalid_argument("line enumeration needs F_p structure constants");
                prod[g][h][k] = x.a;
            }
    auto pats = rref_patterns(p);
    jobs = std::max(1, jobs);
    struct Local {
        std::vector<std::pair<std::array<std::array<uint32_t, 4>, 2>, int>> hits;
        size_t scanned = 0, low = 0;
    };
    std::vector<Local> loc(jobs);
    auto work = [&](int t) {
        Local& L = loc[t];
        uint64_t global = 0;
        uint32_t m[80];
        for (auto& P : pats) {
            const size_t nf1 = P.free1.size(), nf = nf1 + P.free2.size();
            for (uint64_t c = 0; c < P.count; ++c, ++global) {
                if (int(global % uint64_t(jobs)) != t) continue;
                std::array<std::array<uint32_t, 4>, 2> rows{};
                rows[0][P.i] = 1;
                rows[1][P.j] = 1;
                uint64_t r = c;
                for (size_t k = 0; k < nf; ++k) {
                    uint32_t v = uint32_t(r % p);
                    r /= p;
                    if (k < nf1)
                        rows[0][P.free1[k]] = v;
                    else
                        rows[1][P.free2[k - nf1]] = v;
                }
                for (int s = 0; s < 2; ++s)
                    for (int g = 0; g < 4; ++g) {
                        uint32_t* row = m + (4 * s + g) * 10;
                        for (int k = 0; k < 10; ++k) {
                            uint64_t acc = 0;
                            for (int h = 0; h < 4; ++h) acc += uint64_t(rows[s][h]) * prod[g][h][k];
                            row[k] = uint32_t(acc % p);
                        }
                    }
                ++L.scanned;
                int rk = rank_mod_p(m, 8, 10, p, inv);
                if (rk <= 7) L.hits.push_back({rows, rk});
                if (rk <= 6) ++L.low;
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> th;
        for (int t = 0; t < jobs; ++t) th.emplace_back(work, t);
        for (auto& x : th) x.join();
    }
    LineSchemeResult R;
    for (auto& L : loc) {
        R.scanned += L.scanned;
        R.low_rank += L.low;
        for (auto& [rows, rk] : L.hits) {
            LineHit h;
            for (int s = 0; s < 2; ++s)
                for (int k = 0; k < 4; ++k) h.rows[s][k] = F.make(rows[s][k], 0);
            h.rank = rk;
            h.z = normalize_plk(plucker_from_points(h.rows[0], h.rows[1]));
            R.hits.push_back(std::move(h));
        }
    }
    std::sort(R.hits.begin(), R.hits.end(),
              [](const LineHit& a, const LineHit& b) { return plk_key(a.z) < plk_key(b.z); });
    for (size_t k = 0; k < R.hits.size(); ++k) {
        auto& h = R.hits[k];
        h.tags = component_tags(specs, h.z);
        for (int t : h.tags) ++R.counts[t];
        if (h.tags.empty()) R.unmatched.push_back(k);
        if (h.tags.size() > 1) R.multi.push_back(k);
    }
    return R;
}

std::array<std::vector<Plk<Fp2>>, 7> component_points(const std::array<ComponentSpec<Fp2>, 7>& specs,
                                                      const FpField& F) {
    std::array<std::vector<Plk<Fp2>>, 7> out;
    const Fp2 zero = F.zero(), one = F.one();
    const uint32_t p = F.p();
    for (int c = 0; c < 7; ++c) {
        const auto& S = specs[c];
        Mat<Fp2> lin(0, 6, zero);
        for (auto& f : S.linear) {
            std::vector<Fp2> row(6, zero);
            for (auto& [m, v] : f.terms()) {
                if (m.deg != 1) throw std::invalid_argument("linear equation expected");
                for (int k = 0; k < 6; ++k)
                    if (m.e[k]) row[k] = v;
            }
            lin.append_row(row);
        }
        auto B = nullspace(lin, zero, one);
        const int d = int(B.size());
        std::set<PlkKey> seen;
        for (int lead = 0; lead < d; ++lead) {
            uint64_t n = 1;
            for (int k = lead + 1; k < d; ++k) n *= p;
            for (uint64_t t = 0; t < n; ++t) {
                std::vector<Fp2> co(d, zero);
                co[lead] = one;
                uint64_t r = t;
                for (int k = d - 1; k > lead; --k) {
                    co[k] = F.make(uint32_t(r % p), 0);
                    r /= p;
                }
                Plk<Fp2> z;
                std::vector<Fp2> zv(6, zero);
                for (int k = 0; k < 6; ++k) {
                    Fp2 s = zero;
                    for (int b = 0; b < d; ++b) s += co[b] * B[b][k];
                    z[k] = s;
                    zv[k] = s;
                }
                bool ok = true;
                for (auto& f : S.quadratic) ok = ok && f.eval(zv).is_zero();
                if (!ok) continue;
                z = normalize_plk(z);
                if (seen.insert(plk_key(z)).second) out[c].push_back(z);
            }
        }
        std::sort(out[c].begin(), out[c].end(),
                  [](const Plk<Fp2>& a, const Plk<Fp2>& b) { return plk_key(a) < plk_key(b); });
    }
    return out;
}

AuditReport line_scheme_audit(const LineSchemeResult& R, const std::array<ComponentSpec<Fp2>, 7>& specs,
                              const Params<Fp2>& P, const FpField& F) {
    AuditReport rep;
    rep.name = "line_scheme";
    auto comp = component_points(specs, F);
    std::array<std::set<PlkKey>, 7> cs;
    std::set<PlkKey> uni;
    Json sizes;
    for (int c = 0; c < 7; ++c) {
        for (auto& z : comp[c]) {
            cs[c].insert(plk_key(z));
            uni.insert(plk_key(z));
        }
        sizes[kComponentNames[c]] = comp[c].size();
    }
    std::set<PlkKey> got;
    for (auto& h : R.hits) got.insert(plk_key(h.z));
    rep.add("no_unmatched_lines", R.unmatched.empty(), R.unmatched.size());
    rep.add("no_rank_at_most_6", R.low_rank == 0, R.low_rank);
    rep.add("lines_equal_union_of_components", got == uni, {{"enumerated", got.size()}, {"union", uni.size()}});
    bool per = true;
    for (int c = 0; c < 7; ++c) per = per && R.counts[c] == comp[c].size();
    rep.add("per_component_counts_match_oracle", per, sizes);
    auto inter = [&](int x, int y) {
        std::vector<PlkKey> r;
        std::set_intersection(cs[x].begin(), cs[x].end(), cs[y].begin(), cs[y].end(), std::back_inserter(r));
        return r;
    };
    bool cdis = true, edis = true;
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y) cdis = cdis && inter(x, y).empty();
    for (int x = 4; x < 7; ++x)
        for (int y = x + 1; y < 7; ++y) edis = edis && inter(x, y).empty();
    rep.add("conics_pairwise_disjoint", cdis);
    rep.add("elliptic_components_pairwise_disjoint", edis);
    const Fp2 zero = F.zero(), one = F.one();
    auto tab = intersection_table(P, zero, one);
    bool two = true, match = true;
    size_t total = 0;
    Json cells = Json::array();
    for (int ci = 0; ci < 4; ++ci)
        for (int ej = 0; ej < 3; ++ej) {
            auto I = inter(ci, 4 + ej);
            total += I.size();
            two = two && I.size() == 2;
            std::set<PlkKey> want = {plk_key(normalize_plk(tab[ci][ej][0])), plk_key(normalize_plk(tab[ci][ej][1]))};
            std::set<PlkKey> have(I.begin(), I.end());
            bool m = want == have;
            match = match && m;
            Json cell;
            cell["C"] = ci;
            cell["E"] = ej + 1;
            cell["size"] = I.size();
            cell["matches_table"] = m;
            Json pts = Json::array();
            for (auto& z : comp[ci])
                if (cs[4 + ej].count(plk_key(z))) pts.push_back(plk_json(z));
            cell["points"] = pts;
            cells.push_back(cell);
        }
    rep.add("each_conic_meets_each_elliptic_component_twice", two, total);
    rep.add("intersections_match_table", match, cells);
    // multi-tagged hits are exactly the intersection points
    bool multi_ok = true;
    for (size_t k : R.multi) {
        const auto& t = R.hits[k].tags;
        multi_ok = multi_ok && t.size() == 2 && t[0] < 4 && t[1] >= 4;
    }
    rep.add("multi_tagged_hits_are_intersections", multi_ok && R.multi.size() == total, R.multi.size());
    return rep;
}

std::vector<SecantLine> secant_lines(const ECurve& C, const LineTest<Fp2>& T,
                                     const std::array<ComponentSpec<Fp2>, 7>& specs) {
    std::vector<SecantLine> out;
    const Fp2 zero = C.zero(), one = C.one();
    for (const auto& p : C.all_points(true))
        for (int j = 1; j <= 3; ++j) {
            Pt<Fp2> q = C.add(p, C.xi()[j]);
            SecantLine s;
            s.p = p;
            s.family = j;
            Mat<Fp2> f = line_forms(bridge_to_y(C.par(), p), bridge_to_y(C.par(), q), zero, one);
            for (int r = 0; r < 2; ++r)
                for (int k = 0; k < 4; ++k) s.rows[r][k] = f(r, k);
            s.z = normalize_plk(plucker_of_rows(f));
            s.rank = T.rank(s.rows[0], s.rows[1]);
            s.tags = component_tags(specs, s.z);
            out.push_back(std::move(s));
        }
    return out;
}

std::vector<SecantLine> elliptic_lines(const ECurve& C, const LineTest<Fp2>& T,
                                       const std::array<ComponentSpec<Fp2>, 7>& specs) {
    std::vector<SecantLine> out;
    const Fp2 zero = C.zero(), one = C.one();
    for (const auto& p : C.all_points(true))
        for (int j = 1; j <= 3; ++j) {
            Pt<Fp2> q = C.add(p, C.xi()[j]);
            for (int sg = 0; sg < 2; ++sg) {
                auto f = elliptic_module_line(C.par(), p, q, j, sg, zero, one);
                if (!f) throw std::runtime_error("annihilator of a fat point line is not two-dimensional");
                SecantLine s;
                s.p = p;
                s.family = j;
                s.sign = sg;
                for (int r = 0; r < 2; ++r)
                    for (int k = 0; k < 4; ++k) s.rows[r][k] = (*f)(r, k);
                s.z = normalize_plk(plucker_of_rows(*f));
                s.rank = T.rank(s.rows[0], s.rows[1]);
                s.tags = component_tags(specs, s.z);
                out.push_back(std::move(s));
            }
        }
    return out;
}

AuditReport elliptic_component_audit(const ECurve& C, const LineTest<Fp2>& T,
                                     const std::array<ComponentSpec<Fp2>, 7>& specs) {
    AuditReport rep;
    rep.name = "elliptic_lines";
    auto pts = C.all_points(true);
    auto mod = elliptic_lines(C, T, specs);
    auto sec = secant_lines(C, T, specs);
    auto oracle = component_points(specs, C.field());
    auto ext = C.all_points(false);
    const Fp2 zero = C.zero(), one = C.one();
    for (int j = 1; j <= 3; ++j) {
        std::string f = "xi" + std::to_string(j);
        bool rational = true;
        for (auto& p : pts) rational = rational && in_base(C.add(p, C.xi()[j]));
        rep.add(f + ".translate_stays_rational", rational);
        std::set<PlkKey> all;
        for (int sg = 0; sg < 2; ++sg) {
            bool line = true, tag = true;
            std::map<PlkKey, int> mult;
            for (auto& s : mod) {
                if (s.family != j || s.sign != sg) continue;
                line = line && s.rank == 7;
                tag = tag && s.tags.size() >= 1 && std::find(s.tags.begin(), s.tags.end(), 3 + j) != s.tags.end();
                ++mult[plk_key(s.z)];
                all.insert(plk_key(s.z));
            }
            bool two_to_one = true;
            for (auto& [k, n] : mult) two_to_one = two_to_one && n == 2;
            std::string g = f + (sg == 0 ? ".eigen_plus_i" : ".eigen_minus_i");
            rep.add(g + ".lines_of_the_scheme", line);
            rep.add(g + ".tagged_E" + std::to_string(j), tag);
            rep.add(g + ".two_to_one", two_to_one && mult.size() * 2 == pts.size(),
                    {{"points", pts.size()}, {"distinct_lines", mult.size()}});
        }
        bool same_sign = true;
        {
            std::set<PlkKey> by[2];
            for (auto& s : mod)
                if (s.family == j) by[s.sign].insert(plk_key(s.z));
            same_sign = by[0] == by[1];
        }
        rep.add(f + ".both_eigenvalues_give_the_same_lines", same_sign);
        // conjugate pairs p, p + xi_j = Frob(p) give the remaining rational lines
        bool conj_ok = true;
        size_t conj_pairs = 0;
        for (auto& p : ext) {
            if (in_base(p)) continue;
            Pt<Fp2> q = C.add(p, C.xi()[j]), fp = p;
            for (auto& x : fp) x = x.conj();
            if (!proj_eq(q, fp)) continue;
            ++conj_pairs;
            auto fm = elliptic_module_line(C.par(), p, q, j, 0, zero, one);
            if (!fm) {
                conj_ok = false;
                continue;
            }
            Plk<Fp2> z = normalize_plk(plucker_of_rows(*fm));
            Pt<Fp2> u, v;
            for (int k = 0; k < 4; ++k) {
                u[k] = (*fm)(0, k);
                v[k] = (*fm)(1, k);
            }
            auto tags = component_tags(specs, z);
            conj_ok = conj_ok && in_base_plk(z) && T.rank(u, v) == 7 &&
                      std::find(tags.begin(), tags.end(), 3 + j) != tags.end();
            all.insert(plk_key(z));
        }
        rep.add(f + ".conjugate_pairs_give_rational_lines", conj_ok && conj_pairs > 0, {{"pairs", conj_pairs}});
        std::set<PlkKey> want;
        for (auto& z : oracle[3 + j]) want.insert(plk_key(z));
        rep.add(f + ".cover_E" + std::to_string(j) + "_rational_points", all == want,
                {{"lines", all.size()}, {"component_points", want.size()}});
        // the secant bridged to y agrees with one eigenvalue exactly when the substitution commutes with q_j
        size_t naive_lines = 0, naive_matches = 0;
        std::set<PlkKey> minus;
        for (auto& s : mod)
            if (s.family == j && s.sign == 1) minus.insert(plk_key(s.z));
        for (auto& s : sec) {
            if (s.family != j) continue;
            naive_lines += s.rank == 7;
            naive_matches += minus.count(plk_key(s.z));
        }
        size_t n = pts.size();
        bool expect = j < 3 ? naive_matches == n && naive_lines == n : naive_matches == 0;
        rep.add(f + (j < 3 ? ".bridged_secant_equals_minus_i_line" : ".bridged_secant_differs"), expect,
                {{"secants", n}, {"secants_of_rank_7", naive_lines}, {"matching_module_lines", naive_matches}});
    }
    return rep;
}

AuditReport component_degree_audit(const std::array<ComponentSpec<Fp2>, 7>& specs) {
    AuditReport rep;
    rep.name = "component_degrees";
    const Fp2 zero = specs[0].linear[0].zero(), one = one_of(zero);
    Poly<Fp2> pl = plucker_poly(zero, one);
    for (int c = 0; c < 7; ++c) {
        auto gens = specs[c].equations();
        gens.push_back(pl);
        DimDegree dd = proj_dim_degree(gens, 6);
        long long want = c < 4 ? 2 : 4;
        rep.add(std::string(kComponentNames[c]) + ".dim_1_degree_" + std::to_string(want),
                !dd.empty && dd.dim == 1 && dd.degree == want, {{"dim", dd.dim}, {"degree", dd.degree}});
    }
    return rep;
}

namespace {

std::vector<Mono> quartic_monomials() {
    std::vector<Mono> out;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b)
            for (int c = 0; a + b + c <= 4; ++c)
                for (int d = 0; a + b + c + d <= 4; ++d)
                    for (int e = 0; a + b + c + d + e <= 4; ++e) {
                        Mono m{};
                        m.e[0] = uint8_t(a);
                        m.e[1] = uint8_t(b);
                        m.e[2] = uint8_t(c);
                        m.e[3] = uint8_t(d);
                        m.e[4] = uint8_t(e);
                        m.e[5] = uint8_t(4 - a - b - c - d - e);
                        m.deg = 4;
                        out.push_back(m);
                    }
    return out;
}

Fp2 mono_eval(const Mono& m, const Plk<Fp2>& z, const Fp2& one) {
    Fp2 v = one;
    for (int k = 0; k < 6; ++k)
        for (int e = 0; e < m.e[k]; ++e) v = v * z[k];
    return v;
}

// the 45 maximal minors of the 8 x 10 matrix, indexed by the dropped column pair
std::vector<Fp2> max_minors(const Mat<Fp2>& m, const Fp2& zero, const Fp2& one) {
    std::vector<Fp2> out;
    for (int x = 0; x < 10; ++x)
        for (int y = x + 1; y < 10; ++y) {
            Mat<Fp2> s(8, 8, zero);
            for (int r = 0; r < 8; ++r) {
                int c = 0;
                for (int k = 0; k < 10; ++k)
                    if (k != x && k != y) s(r, c++) = m(r, k);
            }
            out.push_back(determinant(s, zero, one));
        }
    return out;
}

std::pair<Pt<Fp2>, Pt<Fp2>> random_span(const FpField& F, std::mt19937_64& rng) {
    for (;;) {
        Pt<Fp2> u, v;
        for (int k = 0; k < 4; ++k) {
            u[k] = F.random_base(rng);
            v[k] = F.random_base(rng);
        }
        bool dep = true;
        for (int k = 0; k < 4 && dep; ++k)
            for (int l = k + 1; l < 4; ++l)
                if (!(u[k] * v[l] - u[l] * v[k]).is_zero()) {
                    dep = false;
                    break;
                }
        if (!dep) return {u, v};
    }
}

} // namespace

QuarticResult quartics_in_plucker(const LineTest<Fp2>& T, const FpField& F, uint64_t seed, size_t samples,
                                  size_t held_out) {
    QuarticResult Q;
    const Fp2 zero = F.zero(), one = F.one();
    auto mons = quartic_monomials();
    const size_t nm = mons.size();
    std::mt19937_64 rng(seed * 0xD1342543DE82EF95ULL + 11);
    Mat<Fp2> sys(samples, nm + 45, zero);
    for (size_t s = 0; s < samples; ++s) {
        auto [u, v] = random_span(F, rng);
        Plk<Fp2> z = plucker_from_points(u, v);
        for (size_t k = 0; k < nm; ++k) sys(s, k) = mono_eval(mons[k], z, one);
        auto mm = max_minors(T.matrix(u, v), zero, one);
        for (size_t k = 0; k < 45; ++k) sys(s, nm + k) = mm[k];
    }
    std::vector<size_t> piv;
    rref(sys, &piv, nm);
    Q.samples = samples;
    Q.rank = piv.size();
    Q.consistent = true;
    for (size_t r = piv.size(); r < samples; ++r)
        for (size_t k = nm; k < nm + 45; ++k)
            if (!sys(r, k).is_zero()) Q.consistent = false;
    for (size_t q = 0; q < 45; ++q) {
        std::vector<Poly<Fp2>::Term> ts;
        for (size_t r = 0; r < piv.size(); ++r)
            if (!sys(r, nm + q).is_zero()) ts.push_back({mons[piv[r]], sys(r, nm + q)});
        Q.quartics.push_back(Poly<Fp2>::from_terms(6, ts, zero));
    }
    for (size_t s = 0; s < held_out; ++s) {
        auto [u, v] = random_span(F, rng);
        Plk<Fp2> z = plucker_from_points(u, v);
        std::vector<Fp2> zv(z.begin(), z.end());
        auto mm = max_minors(T.matrix(u, v), zero, one);
        for (size_t q = 0; q < 45; ++q)
            if (Q.quartics[q].eval(zv) != mm[q]) Q.consistent = false;
    }
    Q.held_out = held_out;
    return Q;
}

DimDegree quartic_certificate(const QuarticResult& Q, GroebnerStats* stats) {
    std::vector<Poly<Fp2>> gens;
    for (auto& f : Q.quartics)
        if (!f.is_zero()) gens.push_back(f);
    if (gens.empty()) throw std::invalid_argument("no quartics");
    const Fp2 zero = gens[0].zero();
    gens.push_back(plucker_poly(zero, one_of(zero)));
    GroebnerBasis<Fp2> G;
    DimDegree dd = proj_dim_degree(gens, 6, &G);
    if (stats) *stats = G.stats;
    return dd;
}

AuditReport quartic_audit(const QuarticResult& Q, const LineSchemeResult& R, const LineTest<Fp2>& T,
                          const Params<Fp2>& P, const FpField& F, uint64_t seed) {
    AuditReport rep;
    rep.name = "plucker_quartics";
    rep.add("interpolation_consistent_on_held_out_samples", Q.consistent,
            {{"samples", Q.samples}, {"held_out", Q.held_out}, {"rank", Q.rank}});
    rep.add("quartic_space_rank_is_105", Q.rank == 105, Q.rank);
    bool vanish = true;
    for (auto& h : R.hits) {
        std::vector<Fp2> zv(h.z.begin(), h.z.end());
        for (auto& f : Q.quartics) vanish = vanish && f.eval(zv).is_zero();
    }
    rep.add("quartics_vanish_on_enumerated_lines", vanish, R.hits.size());
    const Fp2 zero = F.zero(), one = F.one();
    Poly<Fp2> s = Poly<Fp2>::var(2, 0, one, zero), t = Poly<Fp2>::var(2, 1, one, zero);
    Poly<Fp2> pl = s * s + t * t, mi = s * s - t * t, st = (s * t).scale(one + one);
    std::vector<Poly<Fp2>> psi = {pl.scale(P.i * P.a.inv()), st.scale(P.b.inv()), mi.scale(P.c.inv()),
                                  mi.scale(-P.c),            st.scale(P.b),        pl.scale(-(P.i * P.a))};
    bool conic = true;
    for (auto& f : Q.quartics) conic = conic && f.compose(psi).is_zero();
    rep.add("quartics_vanish_on_conic_parametrization", conic);
    // off the scheme some quartic is nonzero
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 23);
    size_t tried = 0, agree = 0;
    while (tried < 50) {
        auto [u, v] = random_span(F, rng);
        ++tried;
        bool line = T.rank(u, v) == 7;
        Plk<Fp2> z = plucker_from_points(u, v);
        std::vector<Fp2> zv(z.begin(), z.end());
        bool zero_all = true;
        for (auto& f : Q.quartics) zero_all = zero_all && f.eval(zv).is_zero();
        agree += zero_all == line ? 1 : 0;
    }
    rep.add("quartics_agree_with_rank_test_on_random_lines", agree == tried, agree);
    return rep;
}

} // namespace tw
