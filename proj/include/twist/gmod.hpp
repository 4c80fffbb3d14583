#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "twist/audit.hpp"
#include "twist/egeom.hpp"
#include "twist/qalg.hpp"
#include "twist/qalg_audit.hpp"
#include "twist/schemes.hpp"

namespace tw {

// graded left module given degreewise: act[n][g] maps M_n to M_{n+1}
template <class E>
struct GradedModule {
    std::string kind;  // point, line, fat, simple, kernel
    std::vector<size_t> dims;
    std::vector<std::array<Mat<E>, 4>> act;
    E zero, one;

    int cutoff() const { return int(dims.size()) - 1; }
    Mat<E> act_linear(int n, const Pt<E>& w) const {
        Mat<E> r(dims[n + 1], dims[n], zero);
        for (int g = 0; g < 4; ++g)
            if (!w[g].is_zero())
                for (size_t a = 0; a < r.rows(); ++a)
                    for (size_t b = 0; b < r.cols(); ++b) r(a, b) += w[g] * act[n][g](a, b);
        return r;
    }
    Json json(bool full = false) const;
};

// sum c^{ij} act(g_i) act(g_j) = 0 in every degree
template <class E>
bool respects_relations(const GradedModule<E>& M, const Presentation<E>& pres);

// relations of the S point module vanish on (p_{n+1}, p_n); throws unless rank N(p) = 3 along the orbit
template <class E>
std::vector<Pt<E>> point_orbit(const Linearization<E>& L, const Pt<E>& p, int length);

template <class E>
GradedModule<E> point_module(const Linearization<E>& L, const Pt<E>& p, int cutoff);

// A / A W with W spanned by the given degree-one elements; A must reach the cutoff
template <class E>
GradedModule<E> cyclic_quotient(const GradedAlgebra<E>& A, const std::vector<Pt<E>>& W, int cutoff);

// M_p (x) k^2 over A: y_j (e_n (x) v) = (p_n)_j e_{n+1} (x) q_j v, with p_n the S-orbit of p
template <class E>
GradedModule<E> fat_point_module(const Linearization<E>& LS, const Params<E>& P, const Pt<E>& p, int cutoff);

// V (x) k[t] for a representation x_i -> rho[i]
template <class E>
GradedModule<E> homogenize(const std::array<Mat<E>, 4>& rho, int cutoff, const E& zero, const E& one);

// the two-dimensional simple representations: rows rho_0 .. rho_3, columns x_0 .. x_3
template <class E>
std::array<std::array<Mat<E>, 4>, 4> simple2_table(const Params<E>& P, const E& zero, const E& one);

// f_p(sum l_j y_j) = sum l_j p_j q_j
template <class E>
Mat<E> fat_form(const Params<E>& P, const Pt<E>& p, const Pt<E>& l, const E& zero, const E& one);

// {m in M_0 : w m = 0 for all w in W}
template <class E>
std::vector<Vec<E>> hom0(const std::vector<Pt<E>>& W, const GradedModule<E>& M);

// the morphism from a cyclic module L sending its generator to m0 in M_0, degree by degree
template <class E>
struct CyclicHom {
    bool well_defined = false;
    std::vector<Mat<E>> f;  // f[n] : L_n -> M_n
};

template <class E>
CyclicHom<E> cyclic_hom(const GradedModule<E>& L, const GradedModule<E>& M, const Vec<E>& m0);

// degree-n parts of the submodule generated by gens in degree d (rows are basis vectors)
template <class E>
std::vector<Mat<E>> generated_submodule(const GradedModule<E>& M, int d, const std::vector<Vec<E>>& gens);

template <class E>
struct KernelData {
    bool well_defined = false;
    std::vector<size_t> image_dims, kernel_dims, generated_dims;
    int start = -1;                     // lowest degree with nonzero kernel
    std::optional<Mat<E>> annihilator;  // degree-one annihilator of a generator when it is two-dimensional
    std::vector<Vec<E>> generator;
};

// kernel of the map L -> T sending the generator to m0
template <class E>
KernelData<E> kernel_data(const GradedModule<E>& L, const GradedModule<E>& T, const Vec<E>& m0);

// the relations of the simple representations, the central annihilators, the non-isomorphism witnesses, rho_j = rho_0 phi_j
template <class E>
AuditReport simple2_audit(const GradedAlgebra<E>& S);

// M_{p,q} -> V(tau + xi_j) for sampled p + q = tau + xi_j: Hom dimension, surjectivity, kernel shape
AuditReport simple2_line_audit(const GradedAlgebra<Fp2>& S, const ECurve& C, int cutoff, uint64_t seed, int samples = 4);

// the point modules of the table: relations, Hilbert functions, successor, central annihilators
template <class E>
AuditReport point_module_audit(const GradedAlgebra<E>& A, int cutoff);

// det f_{tau'} against the dual quadric and the displayed images of the commuting basis
template <class E>
AuditReport fat_form_identities(const Params<E>& P, const E& zero, const E& one);

// fat point modules over a split prime: singular locus, relations, pencil annihilation, commuting lines
AuditReport fat_point_audit(const GradedAlgebra<Fp2>& A, const ECurve& C, int cutoff, uint64_t seed);

// A / A W dimensions by direct elimination in the tensor algebra
template <class E>
std::vector<size_t> cyclic_quotient_oracle(const Presentation<E>& pres, const std::vector<Pt<E>>& W, int nmax);

} // namespace tw
