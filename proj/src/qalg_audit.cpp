#include "twist/qalg_audit.hpp"

#include <set>

namespace tw {

namespace {

template <class E>
Json vec_json(const Vec<E>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

template <class E>
Json mat_json(const Mat<E>& m) {
    Json a = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row_vec(i)));
    return a;
}

template <class E>
bool vec_zero(const Vec<E>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

template <class E>
Vec<E> lincomb(const std::vector<std::pair<E, const Vec<E>*>>& terms) {
    Vec<E> out(terms.front().second->size(), terms.front().first - terms.front().first);
    for (const auto& [c, v] : terms)
        for (size_t k = 0; k < out.size(); ++k)
            if (!(*v)[k].is_zero()) out[k] += c * (*v)[k];
    return out;
}

template <class E>
bool proportional(const Vec<E>& u, const Vec<E>& v, const E& zero) {
    Mat<E> m(2, u.size(), zero);
    for (size_t k = 0; k < u.size(); ++k) {
        m(0, k) = u[k];
        m(1, k) = v[k];
    }
    return !vec_zero(u) && !vec_zero(v) && rank_of(m) == 1;
}

} // namespace

template <class E>
CentralS<E> central_S(const Params<E>& P, const E& zero, const E& one) {
    const E &al = P.alpha, &be = P.beta, &ga = P.gamma;
    CentralS<E> c;
    c.omega = {-one, one, one, one};
    c.om[0] = {zero, one + ga, one + al * ga, one - al};
    c.om[1] = {one + be * ga, zero, -(ga + be * ga), be - be * ga};
    c.om[2] = {one + al * ga, ga - al * ga, zero, -(al + al * ga)};
    c.om[3] = {one + al * be, -(be + al * be), al - al * be, zero};
    return c;
}

template <class E>
CentralA<E> central_A(const Params<E>& P, const E& zero, const E& one) {
    const E &al = P.alpha, &be = P.beta, &ga = P.gamma;
    CentralA<E> c;
    c.omega = {-one, -one, -one, -one};
    c.theta[0] = {zero, zero, zero, zero};
    c.theta[1] = {one, -(be * ga), ga, -be};
    c.theta[2] = {one, -ga, -(al * ga), al};
    c.theta[3] = {one, be, -al, -(al * be)};
    return c;
}

template <class E>
Vec<E> diag_element(const GradedAlgebra<E>& A, const Diag<E>& d) {
    std::array<E, 16> q;
    q.fill(A.zero());
    for (int k = 0; k < 4; ++k) q[k * 4 + k] = d[k];
    return A.quadratic(q);
}

template <class E>
Vec<E> map_quadratic(const GradedAlgebra<E>& A, const GeneratorMap<E>& m, const std::array<E, 16>& q) {
    std::array<E, 16> out;
    out.fill(A.zero());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (q[i * 4 + j].is_zero()) continue;
            for (int k = 0; k < 4; ++k) {
                if (m(k, i).is_zero()) continue;
                for (int l = 0; l < 4; ++l)
                    if (!m(l, j).is_zero()) out[k * 4 + l] += q[i * 4 + j] * m(k, i) * m(l, j);
            }
        }
    return A.quadratic(out);
}

template <class E>
static std::array<E, 16> diag16(const Diag<E>& d, const E& zero) {
    std::array<E, 16> q;
    q.fill(zero);
    for (int k = 0; k < 4; ++k) q[k * 4 + k] = d[k];
    return q;
}

template <class E>
AuditReport central_elements_audit(const GradedAlgebra<E>& S, const GradedAlgebra<E>& A) {
    AuditReport rep{"central_elements", {}};
    const auto& P = S.pres().par;
    const E zero = S.zero(), one = S.one();
    auto cs = central_S(P, zero, one);
    auto ca = central_A(P, zero, one);
    rep.add("S.Omega", is_central_deg2(S, diag_element(S, cs.omega)));
    for (int j = 0; j < 4; ++j)
        rep.add("S.Omega_" + std::to_string(j), is_central_deg2(S, diag_element(S, cs.om[j])));
    rep.add("A.Omega", is_central_deg2(A, diag_element(A, ca.omega)));
    for (int j = 1; j <= 3; ++j)
        rep.add("A.Theta_" + std::to_string(j), is_central_deg2(A, diag_element(A, ca.theta[j])));
    Diag<E> y0sq = {one, zero, zero, zero};
    rep.add("A.y0_squared_not_central", !is_central_deg2(A, diag_element(A, y0sq)));
    Diag<E> x0sq = {one, zero, zero, zero};
    rep.add("S.x0_squared_not_central", !is_central_deg2(S, diag_element(S, x0sq)));
    // the S pencil spanned by Omega_0..Omega_3 and Omega is 2-dimensional
    Mat<E> pen(0, S.dim(2), zero);
    pen.append_row(diag_element(S, cs.omega));
    for (int j = 0; j < 4; ++j) pen.append_row(diag_element(S, cs.om[j]));
    size_t rk = rank_of(pen);
    rep.add("S.pencil_dimension", rk == 2, Json{{"rank", rk}});
    Mat<E> penA(0, A.dim(2), zero);
    penA.append_row(diag_element(A, ca.omega));
    for (int j = 1; j <= 3; ++j) penA.append_row(diag_element(A, ca.theta[j]));
    size_t rka = rank_of(penA);
    rep.add("A.central_span_dimension", rka == 2, Json{{"rank", rka}});
    return rep;
}

template <class E>
AuditReport central_pencil_audit(const GradedAlgebra<E>& S) {
    AuditReport rep{"central_relations", {}};
    const auto& P = S.pres().par;
    const E zero = S.zero(), one = S.one();
    const E &al = P.alpha, &be = P.beta, &ga = P.gamma;
    auto cs = central_S(P, zero, one);
    Vec<E> Om = diag_element(S, cs.omega);
    std::array<Vec<E>, 4> O;
    for (int j = 0; j < 4; ++j) O[j] = diag_element(S, cs.om[j]);
    const E two = one + one;

    // printed form: 2abg*Omega_0 + a*Omega_1 + b*Omega_2 + g*Omega_3
    Vec<E> printed = lincomb<E>({{two * al * be * ga, &O[0]}, {al, &O[1]}, {be, &O[2]}, {ga, &O[3]}});
    Diag<E> resid = {one, ga, al * ga, -al};
    Vec<E> resid_v = diag_element(S, resid);
    Vec<E> expect = lincomb<E>({{two * al * be * ga, &resid_v}});
    bool printed_zero = vec_zero(printed);
    bool matches = true;
    for (size_t k = 0; k < printed.size(); ++k) matches = matches && printed[k] == expect[k];
    auto& it = rep.add("printed_relation_with_Omega_0", !printed_zero && matches,
                       Json{{"vanishes", printed_zero},
                            {"value", "2*alpha*beta*gamma*(x0^2 + gamma*x1^2 + alpha*gamma*x2^2 - alpha*x3^2)"},
                            {"value_confirmed", matches}});
    it.erratum = true;
    Vec<E> corrected = lincomb<E>({{two * al * be * ga, &Om}, {al, &O[1]}, {be, &O[2]}, {ga, &O[3]}});
    rep.add("relation_2abg_Omega_plus_aO1_bO2_gO3", vec_zero(corrected));

    static const int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
    for (auto& t : cyc) {
        int i = t[0], j = t[1], k = t[2];
        const E &ai = P.al(i), &aj = P.al(j);
        Vec<E> lhs = lincomb<E>({{aj * (one + ai) * (one + aj), &Om}});
        Vec<E> rhs = lincomb<E>({{one + ai * aj, &O[i]}, {-(one + aj), &O[k]}});
        bool ok = true;
        for (size_t q = 0; q < lhs.size(); ++q) ok = ok && lhs[q] == rhs[q];
        rep.add("cyclic_relation_" + std::to_string(i) + std::to_string(j) + std::to_string(k), ok);
    }

    auto maps = named_maps(P, zero, one);
    std::array<E, 4> offs = {zero, be * ga, al * ga, al * be};
    std::array<Diag<E>, 4> explicit_forms;
    explicit_forms[1] = {one, be * ga, -ga, be};
    explicit_forms[2] = {one, ga, al * ga, -al};
    explicit_forms[3] = {one, -be, al, al * be};
    for (int j = 1; j <= 3; ++j) {
        Vec<E> img = map_quadratic(S, maps.phi[j], diag16(cs.omega, zero));
        for (auto& x : img) x = -x;
        Vec<E> want = lincomb<E>({{one, &O[j]}, {offs[j], &Om}});
        Vec<E> want2 = diag_element(S, explicit_forms[j]);
        bool ok = true, ok2 = true;
        for (size_t q = 0; q < img.size(); ++q) {
            ok = ok && img[q] == want[q];
            ok2 = ok2 && img[q] == want2[q];
        }
        rep.add("minus_phi" + std::to_string(j) + "_Omega_equals_Omega" + std::to_string(j) + "_plus_shift", ok);
        rep.add("minus_phi" + std::to_string(j) + "_Omega_explicit_form", ok2);
        Vec<E> e0 = map_quadratic(S, maps.phi[j], diag16(cs.om[0], zero));
        rep.add("phi" + std::to_string(j) + "_Omega0_proportional_to_Omega" + std::to_string(j),
                proportional(e0, O[j], zero));
    }
    return rep;
}

template <class E>
AuditReport h4_group_audit(const Presentation<E>& S, const Presentation<E>& A) {
    AuditReport rep{"h4_automorphisms", {}};
    const auto& P = S.par;
    const E zero = S.zero, one = S.one;
    auto M = named_maps(P, zero, one);
    const E& i = P.i;
    std::array<E, 4> sq = {one, -(i * P.b * P.c), -(i * P.a * P.c), -(i * P.a * P.b)};
    for (int j = 1; j <= 3; ++j) {
        Mat<E> lhs = M.phi[j] * M.phi[j];
        Mat<E> rhs = mat_scale(M.gamma[j], sq[j]);
        bool ok = lhs == rhs;
        Json d;
        if (!ok) d["difference"] = mat_json(mat_sub(lhs, rhs));
        rep.add("phi" + std::to_string(j) + "_squared", ok, d);
        Mat<E> e2 = mat_scale(lhs, M.nu_sq[j].inv());
        rep.add("eps" + std::to_string(j) + "_squared_is_gamma" + std::to_string(j), e2 == M.gamma[j]);
    }
    static const int pairs[3][2] = {{1, 2}, {2, 3}, {3, 1}};
    for (auto& pr : pairs) {
        Mat<E> lhs = M.phi[pr[0]] * M.phi[pr[1]];
        Mat<E> rhs = mat_scale(M.phi[pr[1]] * M.phi[pr[0]], i);
        bool ok = lhs == rhs;
        Json d;
        if (!ok) d["difference"] = mat_json(mat_sub(lhs, rhs));
        rep.add("phi" + std::to_string(pr[0]) + "phi" + std::to_string(pr[1]) + "_equals_i_phi" +
                    std::to_string(pr[1]) + "phi" + std::to_string(pr[0]),
                ok, d);
    }
    Mat<E> I4 = identity(4, zero, one);
    for (int j = 0; j < 4; ++j) {
        rep.add("gamma" + std::to_string(j) + "_automorphism_of_S", is_graded_automorphism(S, M.gamma[j]));
        rep.add("gamma" + std::to_string(j) + "_automorphism_of_A", is_graded_automorphism(A, M.gamma[j]));
    }
    for (int j = 1; j <= 3; ++j) {
        rep.add("phi" + std::to_string(j) + "_automorphism_of_S", is_graded_automorphism(S, M.phi[j]));
        rep.add("psi" + std::to_string(j) + "_not_automorphism_of_A", !is_graded_automorphism(A, M.psi[j]));
    }
    if (M.has_eps) {
        for (int j = 1; j <= 3; ++j) {
            rep.add("eps" + std::to_string(j) + "_matrix_squared", M.eps[j] * M.eps[j] == M.gamma[j]);
            rep.add("eps" + std::to_string(j) + "_automorphism_of_S", is_graded_automorphism(S, M.eps[j]));
        }
        Mat<E> lhs = M.eps[1] * M.eps[2];
        Mat<E> rhs = mat_scale(M.eps[2] * M.eps[1], i);
        rep.add("eps1eps2_equals_delta_eps2eps1_with_delta_i", lhs == rhs);
        if constexpr (std::is_same_v<E, Fp2>) {
            // closure of <eps1, eps2> has order 64 with centre {1, i, -1, -i}
            std::set<std::vector<uint32_t>> seen;
            auto key = [](const Mat<E>& m) {
                std::vector<uint32_t> k;
                for (const auto& x : m.data()) k.push_back(x.packed());
                return k;
            };
            std::vector<Mat<E>> frontier{I4}, all{I4};
            seen.insert(key(I4));
            while (!frontier.empty() && all.size() <= 256) {
                std::vector<Mat<E>> next;
                for (const auto& g : frontier)
                    for (int j = 1; j <= 2; ++j) {
                        Mat<E> h = g * M.eps[j];
                        if (seen.insert(key(h)).second) {
                            next.push_back(h);
                            all.push_back(h);
                        }
                    }
                frontier = std::move(next);
            }
            size_t central = 0;
            for (const auto& g : all) {
                bool c = true;
                for (int j = 1; j <= 2 && c; ++j) c = g * M.eps[j] == M.eps[j] * g;
                central += c ? 1 : 0;
            }
            rep.add("heisenberg_group_order_64", all.size() == 64, Json{{"order", all.size()}});
            rep.add("heisenberg_centre_order_4", central == 4, Json{{"centre", central}});
        }
    }
    return rep;
}

template <class E>
AuditReport gamma_invariant_audit(const GradedAlgebra<E>& S, const GradedAlgebra<E>& A, int nmax) {
    AuditReport rep{"gamma_invariants", {}};
    const auto& P = S.pres().par;
    const E zero = S.zero(), one = S.one();
    auto q = quaternion_units(P, zero, one);
    std::array<Mat<E>, 4> qinv;
    for (int j = 0; j < 4; ++j) invert(q[j], qinv[j], zero, one);
    static const int sg[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};

    // relations of A map to zero under y_j -> x_j (x) q_j
    bool rel_ok = true;
    for (const auto& r : A.pres().rels) {
        std::vector<E> acc(S.dim(2) * 4, zero);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (r[i * 4 + j].is_zero()) continue;
                Vec<E> s = S.word({i, j});
                Mat<E> m = q[i] * q[j];
                for (size_t b = 0; b < s.size(); ++b)
                    if (!s[b].is_zero())
                        for (int e = 0; e < 4; ++e) acc[b * 4 + e] += r[i * 4 + j] * s[b] * m(e / 2, e % 2);
            }
        rel_ok = rel_ok && vec_zero(acc);
    }
    rep.add("relations_map_to_zero", rel_ok);

    for (int n = 0; n <= nmax; ++n) {
        const size_t ds = S.dim(n), da = A.dim(n), D = ds * 4;
        const auto& sw = S.words(n);
        // fixed space of gamma_1 and gamma_2: op stacks g_j - id for j = 1, 2
        Mat<E> op(2 * D, D, zero);
        for (int j = 1; j <= 2; ++j)
            for (size_t b = 0; b < ds; ++b) {
                int sign = 1;
                for (int l : sw[b]) sign *= sg[j][l];
                for (int e = 0; e < 4; ++e) {
                    Mat<E> X(2, 2, zero);
                    X(e / 2, e % 2) = one;
                    Mat<E> Y = q[j] * X * qinv[j];
                    const size_t col = b * 4 + e, off = (j - 1) * D;
                    for (int f = 0; f < 4; ++f)
                        op(off + b * 4 + f, col) = sign > 0 ? Y(f / 2, f % 2) : -Y(f / 2, f % 2);
                    op(off + col, col) -= one;
                }
            }
        size_t fixed_dim = D - rank_of(op);
        // image of A_n
        Mat<E> img(0, D, zero);
        bool inside = true;
        for (const auto& w : A.words(n)) {
            Vec<E> s = S.word(w);
            Mat<E> m = identity(2, zero, one);
            for (int l : w) m = m * q[l];
            std::vector<E> v(D, zero);
            for (size_t b = 0; b < ds; ++b)
                for (int e = 0; e < 4; ++e) v[b * 4 + e] = s[b] * m(e / 2, e % 2);
            inside = inside && vec_zero(mat_vec(op, v, zero));
            img.append_row(v);
        }
        size_t rk = rank_of(img);
        rep.add("degree_" + std::to_string(n), fixed_dim == da && rk == da && inside,
                Json{{"fixed_dim", fixed_dim}, {"A_dim", da}, {"image_rank", rk}, {"image_fixed", inside}});
    }
    return rep;
}

#define TW_INST(E)                                                                                   \
    template CentralS<E> central_S(const Params<E>&, const E&, const E&);                            \
    template CentralA<E> central_A(const Params<E>&, const E&, const E&);                            \
    template Vec<E> diag_element(const GradedAlgebra<E>&, const Diag<E>&);                            \
    template Vec<E> map_quadratic(const GradedAlgebra<E>&, const GeneratorMap<E>&, const std::array<E, 16>&); \
    template AuditReport central_elements_audit(const GradedAlgebra<E>&, const GradedAlgebra<E>&);    \
    template AuditReport central_pencil_audit(const GradedAlgebra<E>&);                               \
    template AuditReport h4_group_audit(const Presentation<E>&, const Presentation<E>&);              \
    template AuditReport gamma_invariant_audit(const GradedAlgebra<E>&, const GradedAlgebra<E>&, int);

TW_INST(Fp2)
TW_INST(Tower)

} // namespace tw
