#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twist/audit.hpp"
#include "twist/linalg.hpp"
#include "twist/params.hpp"

namespace tw {

template <class E>
using Pt = std::array<E, 4>;

// first nonzero coordinate scaled to 1
template <class E>
Pt<E> normalize(Pt<E> p) {
    for (int k = 0; k < 4; ++k)
        if (!p[k].is_zero()) {
            E s = p[k].inv();
            for (int l = k; l < 4; ++l) p[l] = p[l] * s;
            return p;
        }
    throw std::invalid_argument("zero vector is not a projective point");
}

template <class E>
bool proj_eq(const Pt<E>& p, const Pt<E>& q) {
    for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l)
            if (!(p[k] * q[l] - p[l] * q[k]).is_zero()) return false;
    bool pz = true, qz = true;
    for (int k = 0; k < 4; ++k) {
        pz = pz && p[k].is_zero();
        qz = qz && q[k].is_zero();
    }
    return pz == qz;
}

template <class E>
std::string pt_str(const Pt<E>& p) {
    std::string s = "(";
    for (int k = 0; k < 4; ++k) s += (k ? ", " : "") + p[k].str();
    return s + ")";
}

// diagonal quadratic form sum d_k x_k^2
template <class E>
E eval_diag(const std::array<E, 4>& d, const Pt<E>& p) {
    E s = d[0] * p[0] * p[0];
    for (int k = 1; k < 4; ++k) s += d[k] * p[k] * p[k];
    return s;
}

// the four quadrics containing E: Q(tau), Q(tau + xi_1), Q(tau + xi_2), Q(tau + xi_3)
template <class E>
std::array<std::array<E, 4>, 4> curve_quadrics(const Params<E>& P, const E& one) {
    const E &al = P.alpha, &be = P.beta, &ga = P.gamma;
    return {{{one, one, one, one},
             {one, -(be * ga), -ga, be},
             {one, ga, -(al * ga), -al},
             {one, -be, al, -(al * be)}}};
}

template <class E>
bool on_curve(const Params<E>& P, const Pt<E>& p, const E& one) {
    auto q = curve_quadrics(P, one);
    return eval_diag(q[0], p).is_zero() && eval_diag(q[1], p).is_zero();
}

template <class E>
Pt<E> negate_pt(const Pt<E>& p) {
    return {-p[0], p[1], p[2], p[3]};
}

template <class E>
Pt<E> eps_translate(const Params<E>& P, int j, const Pt<E>& l) {
    const E &a = P.a, &b = P.b, &c = P.c, &i = P.i;
    switch (j) {
    case 0: return l;
    case 1: return {b * c * l[1], -(i * l[0]), i * b * l[3], c * l[2]};
    case 2: return {a * c * l[2], a * l[3], -(i * l[0]), i * c * l[1]};
    case 3: return {a * b * l[3], i * a * l[2], b * l[1], -(i * l[0])};
    }
    throw std::invalid_argument("eps index out of range");
}

template <class E>
Pt<E> gamma_translate(int j, const Pt<E>& l) {
    static const int sg[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
    Pt<E> r = l;
    for (int k = 0; k < 4; ++k)
        if (sg[j][k] < 0) r[k] = -r[k];
    return r;
}

// x-coordinates to y-coordinates: (l0, -i l1, -i l2, l3)
template <class E>
Pt<E> bridge_to_y(const Params<E>& P, const Pt<E>& l) {
    return {l[0], -(P.i * l[1]), -(P.i * l[2]), l[3]};
}
template <class E>
Pt<E> bridge_to_x(const Params<E>& P, const Pt<E>& l) {
    return {l[0], P.i * l[1], P.i * l[2], l[3]};
}
// diagonal form in x to the same form in y (x_1 = i y_1, x_2 = i y_2)
template <class E>
std::array<E, 4> bridge_form_to_y(const std::array<E, 4>& d) {
    return {d[0], -d[1], -d[2], d[3]};
}
template <class E>
std::array<E, 4> bridge_form_to_x(const std::array<E, 4>& d) {
    return {d[0], -d[1], -d[2], d[3]};
}

// Pluecker coordinates (z01, z02, z03, z12, z13, z23)
template <class E>
using Plk = std::array<E, 6>;

inline constexpr int kPlkIdx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

template <class E>
Plk<E> plucker_from_points(const Pt<E>& p, const Pt<E>& q) {
    Plk<E> z;
    for (int k = 0; k < 6; ++k) {
        int i = kPlkIdx[k][0], j = kPlkIdx[k][1];
        z[k] = p[i] * q[j] - p[j] * q[i];
    }
    bool zero = true;
    for (auto& x : z) zero = zero && x.is_zero();
    if (zero) throw std::invalid_argument("points do not span a line");
    return z;
}

// X_pq -> z_rs for (p,q,r,s) an even permutation
template <class E>
Plk<E> dual_line(const Plk<E>& z) {
    return {z[5], -z[4], z[3], z[2], -z[1], z[0]};
}

template <class E>
E plucker_relation(const Plk<E>& z) {
    return z[0] * z[5] - z[1] * z[4] + z[2] * z[3];
}

template <class E>
bool plk_proj_eq(const Plk<E>& u, const Plk<E>& v) {
    for (int k = 0; k < 6; ++k)
        for (int l = k + 1; l < 6; ++l)
            if (!(u[k] * v[l] - u[l] * v[k]).is_zero()) return false;
    return true;
}

template <class E>
Plk<E> normalize_plk(Plk<E> z) {
    for (int k = 0; k < 6; ++k)
        if (!z[k].is_zero()) {
            E s = z[k].inv();
            for (int l = k; l < 6; ++l) z[l] = z[l] * s;
            return z;
        }
    throw std::invalid_argument("zero Pluecker vector");
}

// line spanned by two points, as the 2x4 matrix of linear forms vanishing on it
template <class E>
Mat<E> line_forms(const Pt<E>& p, const Pt<E>& q, const E& zero, const E& one) {
    Mat<E> m(2, 4, zero);
    for (int k = 0; k < 4; ++k) {
        m(0, k) = p[k];
        m(1, k) = q[k];
    }
    auto ns = nullspace(m, zero, one);
    if (ns.size() != 2) throw std::invalid_argument("points do not span a line");
    Mat<E> r(0, 4, zero);
    for (auto& v : ns) r.append_row(v);
    return r;
}

// Pluecker vector of the span of the rows of a 2x4 matrix
template <class E>
Plk<E> plucker_of_rows(const Mat<E>& m) {
    return plucker_from_points<E>({m(0, 0), m(0, 1), m(0, 2), m(0, 3)}, {m(1, 0), m(1, 1), m(1, 2), m(1, 3)});
}

struct PinStats {
    int candidates = 0;
    int passing = 0;
    int samples = 0;
    std::vector<int> failures;  // per candidate
};

// Elliptic curve E over F_{p^2} with the coplanarity group law.
class ECurve {
public:
    ECurve(const Specialization& sp, uint64_t seed, int pin_samples = 20);

    const Params<Fp2>& par() const { return par_; }
    const FpField& field() const { return F_; }
    Fp2 zero() const { return F_.zero(); }
    Fp2 one() const { return F_.one(); }

    bool on_curve(const Pt<Fp2>& p) const { return tw::on_curve(par_, p, one()); }
    Pt<Fp2> negate(const Pt<Fp2>& p) const { return normalize(negate_pt(p)); }
    Pt<Fp2> add(const Pt<Fp2>& p, const Pt<Fp2>& q) const;
    Pt<Fp2> sub(const Pt<Fp2>& p, const Pt<Fp2>& q) const { return add(p, negate(q)); }
    Pt<Fp2> mul(long long n, const Pt<Fp2>& p) const;
    Pt<Fp2> eps(int j, const Pt<Fp2>& p) const { return normalize(eps_translate(par_, j, p)); }
    Pt<Fp2> gam(int j, const Pt<Fp2>& p) const { return normalize(gamma_translate(j, p)); }

    // fourth point of E on the plane through p, q, r (with tangency for repeats)
    Pt<Fp2> fourth_point(const Pt<Fp2>& p, const Pt<Fp2>& q, const Pt<Fp2>& r) const;
    // tangent direction of E at p (second spanning vector of the tangent line)
    Pt<Fp2> tangent(const Pt<Fp2>& p) const;

    Pt<Fp2> random_point(std::mt19937_64& rng) const;
    std::vector<Pt<Fp2>> points_with_x0_zero() const;
    // all points over F_{p^2} when base_only is false, over F_p otherwise
    std::vector<Pt<Fp2>> all_points(bool base_only) const;

    const Pt<Fp2>& origin() const { return o_; }
    const std::array<Pt<Fp2>, 4>& eps_points() const { return eps_; }
    const std::array<Pt<Fp2>, 4>& xi() const { return xi_; }
    const Pt<Fp2>& tau() const { return tau_; }
    const Pt<Fp2>& tau_prime() const { return tau_prime_; }
    const PinStats& pin_stats() const { return pin_; }
    const std::vector<Pt<Fp2>>& origin_candidates() const { return cands_; }

    // the pencil member containing all secants p, z - p; as diagonal coefficients normalized at x0
    std::array<Fp2, 4> q_of_z(const Pt<Fp2>& z, std::mt19937_64& rng, int samples = 3) const;

    Json json() const;

private:
    bool translation_test(const Pt<Fp2>& o, int samples, std::mt19937_64& rng) const;
    Pt<Fp2> add_with(const Pt<Fp2>& o, const Pt<Fp2>& p, const Pt<Fp2>& q) const;

    FpField F_;
    Params<Fp2> par_;
    uint32_t p_;
    std::array<std::array<Fp2, 4>, 2> Q_;
    Pt<Fp2> o_, tau_, tau_prime_;
    std::array<Pt<Fp2>, 4> eps_, xi_;
    std::vector<Pt<Fp2>> cands_;
    PinStats pin_;
};

struct SingularMember {
    std::array<Fp2, 2> lm;     // lambda Q(tau) + mu Q(tau + xi_1)
    std::array<Fp2, 4> form;   // diagonal coefficients
    Pt<Fp2> vertex;
    int vertex_index = -1;     // j with vertex e_j
    int xi_label = -1;         // j with q_of_z(xi_j) equal to this member
};

std::vector<SingularMember> singular_members(const ECurve& C, std::mt19937_64& rng);

// audits
template <class E>
AuditReport egeom_identity_audit(const Params<E>& P, const E& zero, const E& one);
AuditReport group_law_audit(const ECurve& C, uint64_t seed, int samples = 20);
AuditReport quadric_labels_audit(const ECurve& C, uint64_t seed);

} // namespace tw
