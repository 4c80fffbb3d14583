#pragma once

#include <array>

#include "twist/audit.hpp"
#include "twist/qalg.hpp"

namespace tw {

// Diagonal quadratic forms sum d_k g_k^2.
template <class E>
using Diag = std::array<E, 4>;

template <class E>
struct CentralS {
    Diag<E> omega;
    std::array<Diag<E>, 4> om;  // Omega_0 .. Omega_3
};

template <class E>
struct CentralA {
    Diag<E> omega;
    std::array<Diag<E>, 4> theta;  // Theta_1 .. Theta_3 at 1..3
};

template <class E>
CentralS<E> central_S(const Params<E>& P, const E& zero, const E& one);
template <class E>
CentralA<E> central_A(const Params<E>& P, const E& zero, const E& one);

template <class E>
Vec<E> diag_element(const GradedAlgebra<E>& A, const Diag<E>& d);

// image of sum d_k g_k^2 under a generator map, in component coordinates
template <class E>
Vec<E> map_quadratic(const GradedAlgebra<E>& A, const GeneratorMap<E>& m, const std::array<E, 16>& q);

template <class E>
AuditReport central_elements_audit(const GradedAlgebra<E>& S, const GradedAlgebra<E>& A);

template <class E>
AuditReport central_pencil_audit(const GradedAlgebra<E>& S);

template <class E>
AuditReport h4_group_audit(const Presentation<E>& S, const Presentation<E>& A);

// (S (x) M_2)^Gamma versus A in degrees <= nmax
template <class E>
AuditReport gamma_invariant_audit(const GradedAlgebra<E>& S, const GradedAlgebra<E>& A, int nmax);

} // namespace tw
