#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "twist/linalg.hpp"
#include "twist/params.hpp"

namespace tw {

template <class E>
using Vec = std::vector<E>;

// Relation k is sum_{i,j} rels[k][4*i+j] g_i g_j.
template <class E>
struct Presentation {
    std::string name;
    std::array<std::string, 4> gens;
    std::vector<std::array<E, 16>> rels;
    Params<E> par;
    E zero, one;

    std::string serialize() const;
    Mat<E> relation_matrix() const;
};

template <class E>
Presentation<E> presentation_S(const Params<E>& P, const E& zero, const E& one);
template <class E>
Presentation<E> presentation_A(const Params<E>& P, const E& zero, const E& one);

struct CutoffError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degree-n element in component coordinates.
template <class E>
struct NCElement {
    int deg = 0;
    Vec<E> v;
};

// Graded components computed recursively: A_n = (A_{n-1} (x) V) / image(A_{n-2} (x) R).
template <class E>
class GradedAlgebra {
public:
    GradedAlgebra(Presentation<E> pres, int cutoff);

    const Presentation<E>& pres() const { return pres_; }
    int cutoff() const { return cutoff_; }
    const E& zero() const { return pres_.zero; }
    const E& one() const { return pres_.one; }

    size_t dim(int n) const;
    const std::vector<std::vector<int>>& words(int n) const;

    Vec<E> unit() const { return Vec<E>{pres_.one}; }
    Vec<E> gen(int g) const;
    Vec<E> rmul_gen(const Vec<E>& u, int m, int h) const;
    Vec<E> lmul_gen(int g, const Vec<E>& u, int m) const;
    Vec<E> mul(const Vec<E>& u, int m, const Vec<E>& v, int n) const;
    Vec<E> word(const std::vector<int>& w) const;
    Vec<E> linear(const std::array<E, 4>& c) const;
    Vec<E> quadratic(const std::array<E, 16>& c) const;

    NCElement<E> el(const Vec<E>& v, int n) const { return {n, v}; }
    NCElement<E> mul(const NCElement<E>& x, const NCElement<E>& y) const {
        return {x.deg + y.deg, mul(x.v, x.deg, y.v, y.deg)};
    }

    // matrix of left multiplication u -> g u from A_n to A_{n+1}, columns indexed by A_n
    const Mat<E>& left_matrix(int n, int g) const;
    const Mat<E>& right_matrix(int n, int h) const;

private:
    struct Comp {
        size_t dim = 0;
        std::vector<std::vector<int>> words;
        std::vector<size_t> parent;
        std::vector<int> last;
        // right[h] : A_{n-1} -> A_n as (d_n x d_{n-1})
        std::array<Mat<E>, 4> right;
        std::array<Mat<E>, 4> left;
        bool left_ready = false;
    };
    void ensure(int n) const;
    void build(int n) const;
    void build_left(int n) const;

    Presentation<E> pres_;
    int cutoff_;
    mutable std::mutex mu_;
    mutable std::vector<std::unique_ptr<Comp>> comps_;
};

// dim of V^{(x)n} / sum V^i R V^{n-2-i} by direct elimination
template <class E>
size_t tensor_quotient_dim(const Presentation<E>& pres, int n);

template <class E>
bool is_central_deg2(const GradedAlgebra<E>& A, const Vec<E>& z);

// column j = image of generator j
template <class E>
using GeneratorMap = Mat<E>;

template <class E>
bool is_graded_automorphism(const Presentation<E>& pres, const GeneratorMap<E>& m);

template <class E>
bool is_graded_antiautomorphism(const Presentation<E>& pres, const GeneratorMap<E>& m);

template <class E>
std::array<Mat<E>, 4> quaternion_units(const Params<E>& P, const E& zero, const E& one);

template <class E>
struct NamedMaps {
    std::array<GeneratorMap<E>, 4> gamma;  // gamma_0 .. gamma_3
    std::array<GeneratorMap<E>, 4> phi;    // phi_1 .. phi_3 at 1..3
    std::array<E, 4> nu_sq;                // a nu_1^2 = b nu_2^2 = c nu_3^2 = -iabc
    bool has_eps = false;                  // nu_j available as field elements
    std::array<GeneratorMap<E>, 4> eps;    // eps_j = phi_j / nu_j when has_eps
    std::array<GeneratorMap<E>, 4> psi;    // psi_1 .. psi_3 at 1..3 (on y-generators)
};

template <class E>
NamedMaps<E> named_maps(const Params<E>& P, const E& zero, const E& one);

bool try_sqrt(const Fp2& x, Fp2& out);
bool try_sqrt(const Tower& x, Tower& out);

} // namespace tw
