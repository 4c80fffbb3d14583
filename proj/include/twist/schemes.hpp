#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twist/audit.hpp"
#include "twist/cpoly.hpp"
#include "twist/egeom.hpp"
#include "twist/qalg.hpp"

namespace tw {

// N(p) with row k, column j holding sum_i c_k^{ij} p_i, so relation k vanishes on (p, q) iff (N(p) q)_k = 0
template <class E>
struct Linearization {
    std::array<Mat<E>, 4> left;   // left[i](k, j) = c_k^{ij}
    std::array<Mat<E>, 4> right;  // right[j](k, i) = c_k^{ij}
    E zero, one;

    Mat<E> N(const Pt<E>& p) const { return combine(left, p); }
    // row k, column i holding sum_j c_k^{ij} p_j
    Mat<E> N_right(const Pt<E>& p) const { return combine(right, p); }

private:
    Mat<E> combine(const std::array<Mat<E>, 4>& m, const Pt<E>& p) const {
        Mat<E> r(6, 4, zero);
        for (int i = 0; i < 4; ++i)
            if (!p[i].is_zero())
                for (size_t k = 0; k < 6; ++k)
                    for (size_t j = 0; j < 4; ++j) r(k, j) += m[i](k, j) * p[i];
        return r;
    }
};

template <class E>
Linearization<E> linearization(const Presentation<E>& pres);

// the twenty points in y-coordinates: families P_inf, P0, P1, P2, P3; entry [f][0] = p, [f][j] = gamma_j(p)
inline constexpr const char* kFamilyNames[5] = {"P_inf", "P0", "P1", "P2", "P3"};

template <class E>
using PointTable = std::array<std::array<Pt<E>, 4>, 5>;

template <class E>
PointTable<E> point_table(const Params<E>& P, const E& zero, const E& one);

// successor on the table: identity on P_inf and P0, gamma_f on P_f
template <class E>
Pt<E> table_successor(const PointTable<E>& T, int family, int index);

// rank of N(p), the nullspace of N(p) and the module successor (nullspace of N_right(p))
template <class E>
struct PointData {
    int rank = 4;
    std::optional<Pt<E>> theta;
    std::optional<Pt<E>> next;
};

template <class E>
PointData<E> point_data(const Linearization<E>& L, const Pt<E>& p);

template <class E>
AuditReport point_table_audit(const Presentation<E>& A);

struct SchemePoint {
    Pt<Fp2> p;
    int rank = 4;
    Pt<Fp2> theta;
    Pt<Fp2> next;
    int family = -1;
    int index = -1;
};

struct PointSchemeResult {
    std::string algebra;
    bool extension = false;  // searched over F_{q^2} instead of F_q
    std::vector<SchemePoint> points;
    std::vector<Pt<Fp2>> degenerate;  // rank N(p) <= 2
    size_t scanned = 0;
    Json json() const;
};

// all p with rank N(p) <= 3; over F_p, or over F_{p^2} when extension is true
PointSchemeResult point_scheme(const Presentation<Fp2>& pres, const FpField& F, bool extension, uint64_t seed = 1);

// the A result against the table (families, theta), the S result against E(F_q) and the vertices
AuditReport point_scheme_audit_A(const PointSchemeResult& base, const PointSchemeResult& ext, const Params<Fp2>& P);
AuditReport point_scheme_audit_S(const PointSchemeResult& base, const ECurve& C);

// rank of the 8 x 10 matrix of g u, g v in degree 2
template <class E>
class LineTest {
public:
    explicit LineTest(const GradedAlgebra<E>& A);
    Mat<E> matrix(const Pt<E>& u, const Pt<E>& v) const;
    int rank(const Pt<E>& u, const Pt<E>& v) const { return int(rank_of(matrix(u, v))); }
    const E& zero() const { return zero_; }
    const E& one() const { return one_; }
    const std::array<std::array<std::vector<E>, 4>, 4>& products() const { return prod_; }

private:
    // prod_[g][h] = g h in degree-2 coordinates
    std::array<std::array<std::vector<E>, 4>, 4> prod_;
    E zero_, one_;
};

struct LineCheck {
    bool line = false;
    int rank = 0;
    bool degenerate = false;  // rank <= 6
};

template <class E>
LineCheck is_line_of_scheme(const LineTest<E>& T, const Pt<E>& u, const Pt<E>& v);

// indices 0..3 = C0..C3, 4..6 = E1..E3
inline constexpr const char* kComponentNames[7] = {"C0", "C1", "C2", "C3", "E1", "E2", "E3"};

template <class E>
struct ComponentSpec {
    std::string tag;
    std::vector<Poly<E>> linear;
    std::vector<Poly<E>> quadratic;

    std::vector<Poly<E>> equations() const {
        auto r = linear;
        r.insert(r.end(), quadratic.begin(), quadratic.end());
        return r;
    }
    bool contains(const Plk<E>& z) const;
};

// variables z01, z02, z03, z12, z13, z23
template <class E>
std::array<ComponentSpec<E>, 7> component_specs(const Params<E>& P, const E& zero, const E& one);

template <class E>
Poly<E> plucker_poly(const E& zero, const E& one);

// all tags whose equations hold
template <class E>
std::vector<int> component_tags(const std::array<ComponentSpec<E>, 7>& specs, const Plk<E>& z);

// the unique satisfied tag, if any
template <class E>
std::optional<int> component_membership(const std::array<ComponentSpec<E>, 7>& specs, const Plk<E>& z) {
    auto t = component_tags(specs, z);
    if (t.size() == 1) return t[0];
    return std::nullopt;
}

// the commuting conic parametrization and its inverse, (2s)(s, t) or (2t)(s, t) depending on the chart
template <class E>
Plk<E> conic_param(const Params<E>& P, const E& s, const E& t);
template <class E>
std::array<E, 2> conic_param_inv(const Params<E>& P, const Plk<E>& z);

// rows of the commuting line with parameter t
template <class E>
std::array<Pt<E>, 2> commuting_line_rows(const Params<E>& P, const E& t, const E& one);

// closed-form intersection points of C_i and E_j over the parameters: [i][j-1][sign]
template <class E>
std::array<std::array<std::array<Plk<E>, 2>, 3>, 4> intersection_table(const Params<E>& P, const E& zero, const E& one);

struct LineHit {
    Plk<Fp2> z;  // normalized
    std::array<Pt<Fp2>, 2> rows;
    int rank = 0;
    std::vector<int> tags;
};

struct LineSchemeResult {
    std::vector<LineHit> hits;
    std::array<size_t, 7> counts{};
    std::vector<size_t> unmatched;  // indices into hits
    std::vector<size_t> multi;      // hits with more than one tag
    size_t scanned = 0;
    size_t low_rank = 0;
    std::optional<DimDegree> quartic_certificate;
    Json json() const;
};

// every line over F_p; the parameters must lie in F_p
LineSchemeResult line_scheme_enumerate(const LineTest<Fp2>& T, const std::array<ComponentSpec<Fp2>, 7>& specs,
                                       const FpField& F, int jobs = 1);

// F_p solutions of each component from its equations
std::array<std::vector<Plk<Fp2>>, 7> component_points(const std::array<ComponentSpec<Fp2>, 7>& specs, const FpField& F);

// enumeration against the per-component oracle, disjointness, intersections against the closed-form points
AuditReport line_scheme_audit(const LineSchemeResult& R, const std::array<ComponentSpec<Fp2>, 7>& specs,
                              const Params<Fp2>& P, const FpField& F);

// forms in y annihilating m (x) v in M_{p,q} (x) k^2, v the eigenvector of q_j for eigenvalue (1 - 2 sign) i;
// empty unless the annihilator in degree one is two-dimensional
template <class E>
std::optional<Mat<E>> elliptic_module_line(const Params<E>& P, const Pt<E>& p, const Pt<E>& q, int j, int sign,
                                           const E& zero, const E& one) {
    Mat<E> U = line_forms(p, q, zero, one);
    auto Q = quaternion_units(P, zero, one);
    E lam = sign == 0 ? P.i : -P.i;
    Mat<E> D = Q[j];
    for (int r = 0; r < 2; ++r) D(r, r) -= lam;
    auto ev = nullspace(D, zero, one);
    if (ev.size() != 1) return std::nullopt;
    const auto& v = ev[0];
    Mat<E> m(8, 8, zero);
    for (int k = 0; k < 4; ++k) {
        auto w = mat_vec(Q[k], v, zero);
        for (int r = 0; r < 2; ++r) m(2 * k + r, k) = w[r];
    }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int k = 0; k < 4; ++k) m(2 * k + b, 4 + 2 * a + b) = U(a, k);
    Mat<E> W(0, 4, zero);
    for (auto& x : nullspace(m, zero, one)) W.append_row(std::vector<E>(x.begin(), x.begin() + 4));
    if (rref(W) != 2) return std::nullopt;
    W.truncate_rows(2);
    return W;
}

// lines through p and p + xi_j: sign -1 for the secant bridged to y, 0 or 1 for the module construction
struct SecantLine {
    Pt<Fp2> p;
    int family = 0;
    int sign = -1;
    std::array<Pt<Fp2>, 2> rows;  // defining forms in y
    Plk<Fp2> z;
    int rank = 0;
    std::vector<int> tags;
};

std::vector<SecantLine> secant_lines(const ECurve& C, const LineTest<Fp2>& T,
                                     const std::array<ComponentSpec<Fp2>, 7>& specs);

std::vector<SecantLine> elliptic_lines(const ECurve& C, const LineTest<Fp2>& T,
                                       const std::array<ComponentSpec<Fp2>, 7>& specs);

AuditReport elliptic_component_audit(const ECurve& C, const LineTest<Fp2>& T,
                                     const std::array<ComponentSpec<Fp2>, 7>& specs);

// C_i and E_j have projective (dim, degree) = (1, 2) and (1, 4)
AuditReport component_degree_audit(const std::array<ComponentSpec<Fp2>, 7>& specs);

struct QuarticResult {
    std::vector<Poly<Fp2>> quartics;  // 45, in z01..z23
    size_t samples = 0, held_out = 0;
    size_t rank = 0;                  // rank of the sample system
    bool consistent = false;
};

QuarticResult quartics_in_plucker(const LineTest<Fp2>& T, const FpField& F, uint64_t seed, size_t samples = 200,
                                  size_t held_out = 50);

AuditReport quartic_audit(const QuarticResult& Q, const LineSchemeResult& R, const LineTest<Fp2>& T,
                          const Params<Fp2>& P, const FpField& F, uint64_t seed);

// (dim, degree) of the quartics together with the Pluecker relation
DimDegree quartic_certificate(const QuarticResult& Q, GroebnerStats* stats = nullptr);

template <class E>
AuditReport commuting_conic_audit(const GradedAlgebra<E>& A, const GradedAlgebra<E>& S);

template <class E>
AuditReport conic_transport_audit(const Presentation<E>& A);

// the closed-form points and intersection points against the component and scheme equations over the parameters
template <class E>
AuditReport intersection_table_identities(const Params<E>& P, const E& zero, const E& one);

} // namespace tw
