#include "twist/qalg.hpp"

#include <sstream>

namespace tw {

bool try_sqrt(const Fp2& x, Fp2& out) { return x.sqrt(out); }
bool try_sqrt(const Tower&, Tower&) { return false; }

namespace {

// indices (i,j,k) for rotation t of (1,2,3)
std::array<int, 3> cyc(int t) {
    static const int tab[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
    return {tab[t][0], tab[t][1], tab[t][2]};
}

template <class E>
std::array<E, 16> blank(const E& zero) {
    std::array<E, 16> r;
    r.fill(zero);
    return r;
}

// The i = 1 relations, rotated by y1 -> y2 -> y3 -> y1 and alpha -> beta -> gamma.
// sign_jk and sign_kj give the coefficients of g_j g_k and g_k g_j.
template <class E>
std::vector<std::array<E, 16>> rotated_relations(const Params<E>& P, const E& zero, const E& one, bool twisted) {
    std::vector<std::array<E, 16>> rels;
    for (int t = 0; t < 3; ++t) {
        auto [i, j, k] = cyc(t);
        const E& ai = P.al(i);
        auto r1 = blank(zero), r2 = blank(zero);
        r1[0 * 4 + i] = r1[0 * 4 + i] + one;
        r1[i * 4 + 0] = r1[i * 4 + 0] - one;
        r1[j * 4 + k] = r1[j * 4 + k] - ai;
        r1[k * 4 + j] = twisted ? r1[k * 4 + j] + ai : r1[k * 4 + j] - ai;
        r2[0 * 4 + i] = r2[0 * 4 + i] + one;
        r2[i * 4 + 0] = r2[i * 4 + 0] + one;
        r2[j * 4 + k] = r2[j * 4 + k] - one;
        r2[k * 4 + j] = twisted ? r2[k * 4 + j] - one : r2[k * 4 + j] + one;
        rels.push_back(r1);
        rels.push_back(r2);
    }
    return rels;
}

} // namespace

template <class E>
Presentation<E> presentation_S(const Params<E>& P, const E& zero, const E& one) {
    Presentation<E> pr{"S", {"x0", "x1", "x2", "x3"}, rotated_relations(P, zero, one, false), P, zero, one};
    return pr;
}

template <class E>
Presentation<E> presentation_A(const Params<E>& P, const E& zero, const E& one) {
    Presentation<E> pr{"A", {"y0", "y1", "y2", "y3"}, rotated_relations(P, zero, one, true), P, zero, one};
    return pr;
}

template <class E>
std::string Presentation<E>::serialize() const {
    std::ostringstream os;
    for (const auto& r : rels) {
        bool first = true;
        for (int ij = 0; ij < 16; ++ij) {
            if (r[ij].is_zero()) continue;
            std::string mono = gens[ij / 4] + "*" + gens[ij % 4];
            std::string coef;
            if (r[ij] == one)
                coef = first ? "" : " + ";
            else if (r[ij] == -one)
                coef = first ? "-" : " - ";
            else
                coef = std::string(first ? "" : " + ") + "(" + r[ij].str() + ")*";
            os << coef << mono;
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

template <class E>
Mat<E> Presentation<E>::relation_matrix() const {
    Mat<E> m(rels.size(), 16, zero);
    for (size_t k = 0; k < rels.size(); ++k)
        for (int ij = 0; ij < 16; ++ij) m(k, ij) = rels[k][ij];
    return m;
}

template <class E>
GradedAlgebra<E>::GradedAlgebra(Presentation<E> pres, int cutoff) : pres_(std::move(pres)), cutoff_(cutoff) {
    comps_.resize(size_t(cutoff_) + 2);
}

template <class E>
void GradedAlgebra<E>::ensure(int n) const {
    if (n < 0 || n > cutoff_) throw CutoffError("degree " + std::to_string(n) + " exceeds cutoff " + std::to_string(cutoff_));
    std::lock_guard<std::mutex> lk(mu_);
    for (int d = 0; d <= n; ++d)
        if (!comps_[d]) build(d);
}

template <class E>
void GradedAlgebra<E>::build(int n) const {
    auto c = std::make_unique<Comp>();
    const E& zero = pres_.zero;
    const E& one = pres_.one;
    if (n == 0) {
        c->dim = 1;
        c->words = {{}};
        c->parent = {0};
        c->last = {-1};
    } else if (n == 1) {
        c->dim = 4;
        for (int h = 0; h < 4; ++h) {
            c->words.push_back({h});
            c->parent.push_back(0);
            c->last.push_back(h);
            c->right[h] = Mat<E>(4, 1, zero);
            c->right[h](h, 0) = one;
        }
    } else {
        const Comp& prev = *comps_[n - 1];
        const Comp& pp = *comps_[n - 2];
        const size_t d1 = prev.dim, d2 = pp.dim, T = 4 * d1;
        Mat<E> M(d2 * pres_.rels.size(), T, zero);
        size_t row = 0;
        for (size_t cc = 0; cc < d2; ++cc) {
            for (const auto& r : pres_.rels) {
                E* mr = M.row(row);
                for (int i = 0; i < 4; ++i) {
                    const Mat<E>& Ri = prev.right[i];
                    for (int j = 0; j < 4; ++j) {
                        const E& coef = r[i * 4 + j];
                        if (coef.is_zero()) continue;
                        for (size_t b = 0; b < d1; ++b) {
                            const E& x = Ri(b, cc);
                            if (!x.is_zero()) mr[b * 4 + j] += coef * x;
                        }
                    }
                }
                ++row;
            }
        }
        std::vector<size_t> piv;
        size_t rk = rref(M, &piv);
        std::vector<long> pos(T, -1), pivrow(T, -1);
        for (size_t r = 0; r < rk; ++r) pivrow[piv[r]] = long(r);
        for (size_t col = 0; col < T; ++col) {
            if (pivrow[col] >= 0) continue;
            pos[col] = long(c->dim++);
            size_t b = col / 4;
            int h = int(col % 4);
            auto w = prev.words[b];
            w.push_back(h);
            c->words.push_back(std::move(w));
            c->parent.push_back(b);
            c->last.push_back(h);
        }
        for (int h = 0; h < 4; ++h) c->right[h] = Mat<E>(c->dim, d1, zero);
        for (size_t col = 0; col < T; ++col) {
            size_t b = col / 4;
            int h = int(col % 4);
            if (pos[col] >= 0) {
                c->right[h](size_t(pos[col]), b) = one;
            } else {
                const E* mr = M.row(size_t(pivrow[col]));
                for (size_t k = col + 1; k < T; ++k)
                    if (pos[k] >= 0 && !mr[k].is_zero()) c->right[h](size_t(pos[k]), b) = -mr[k];
            }
        }
    }
    comps_[n] = std::move(c);
}

template <class E>
void GradedAlgebra<E>::build_left(int n) const {
    Comp& c = *comps_[n];
    const Comp& nxt = *comps_[n + 1];
    for (int g = 0; g < 4; ++g) {
        c.left[g] = Mat<E>(nxt.dim, c.dim, pres_.zero);
        for (size_t b = 0; b < c.dim; ++b) {
            Vec<E> col;
            if (n == 0) {
                col.assign(4, pres_.zero);
                col[g] = pres_.one;
            } else {
                const Comp& prev = *comps_[n - 1];
                Vec<E> inner = prev.left[g].col_vec(c.parent[b]);
                col = mat_vec(nxt.right[c.last[b]], inner, pres_.zero);
            }
            for (size_t k = 0; k < nxt.dim; ++k) c.left[g](k, b) = col[k];
        }
    }
    c.left_ready = true;
}

template <class E>
size_t GradedAlgebra<E>::dim(int n) const {
    ensure(n);
    return comps_[n]->dim;
}

template <class E>
const std::vector<std::vector<int>>& GradedAlgebra<E>::words(int n) const {
    ensure(n);
    return comps_[n]->words;
}

template <class E>
Vec<E> GradedAlgebra<E>::gen(int g) const {
    Vec<E> v(4, pres_.zero);
    v[g] = pres_.one;
    return v;
}

template <class E>
const Mat<E>& GradedAlgebra<E>::right_matrix(int n, int h) const {
    ensure(n + 1);
    return comps_[n + 1]->right[h];
}

template <class E>
const Mat<E>& GradedAlgebra<E>::left_matrix(int n, int g) const {
    ensure(n + 1);
    std::lock_guard<std::mutex> lk(mu_);
    for (int d = 0; d <= n; ++d)
        if (!comps_[d]->left_ready) build_left(d);
    return comps_[n]->left[g];
}

template <class E>
Vec<E> GradedAlgebra<E>::rmul_gen(const Vec<E>& u, int m, int h) const {
    return mat_vec(right_matrix(m, h), u, pres_.zero);
}

template <class E>
Vec<E> GradedAlgebra<E>::lmul_gen(int g, const Vec<E>& u, int m) const {
    return mat_vec(left_matrix(m, g), u, pres_.zero);
}

template <class E>
Vec<E> GradedAlgebra<E>::mul(const Vec<E>& u, int m, const Vec<E>& v, int n) const {
    if (n == 0) {
        Vec<E> r(u);
        for (auto& x : r) x = x * v[0];
        return r;
    }
    if (m == 0) {
        Vec<E> r(v);
        for (auto& x : r) x = u[0] * x;
        return r;
    }
    ensure(m + n);
    const Comp& cv = *comps_[n];
    Vec<E> out(comps_[m + n]->dim, pres_.zero);
    for (int h = 0; h < 4; ++h) {
        Vec<E> vh(comps_[n - 1]->dim, pres_.zero);
        bool any = false;
        for (size_t b = 0; b < cv.dim; ++b)
            if (cv.last[b] == h && !v[b].is_zero()) {
                vh[cv.parent[b]] += v[b];
                any = true;
            }
        if (!any) continue;
        Vec<E> w = mul(u, m, vh, n - 1);
        Vec<E> t = rmul_gen(w, m + n - 1, h);
        for (size_t k = 0; k < out.size(); ++k)
            if (!t[k].is_zero()) out[k] += t[k];
    }
    return out;
}

template <class E>
Vec<E> GradedAlgebra<E>::word(const std::vector<int>& w) const {
    Vec<E> v = unit();
    for (size_t k = 0; k < w.size(); ++k) v = rmul_gen(v, int(k), w[k]);
    return v;
}

template <class E>
Vec<E> GradedAlgebra<E>::linear(const std::array<E, 4>& c) const {
    return Vec<E>(c.begin(), c.end());
}

template <class E>
Vec<E> GradedAlgebra<E>::quadratic(const std::array<E, 16>& c) const {
    Vec<E> out(dim(2), pres_.zero);
    for (int i = 0; i < 4; ++i) {
        Vec<E> row(4, pres_.zero);
        bool any = false;
        for (int j = 0; j < 4; ++j)
            if (!c[i * 4 + j].is_zero()) {
                row[j] = c[i * 4 + j];
                any = true;
            }
        if (!any) continue;
        Vec<E> t = lmul_gen(i, row, 1);
        for (size_t k = 0; k < out.size(); ++k) out[k] += t[k];
    }
    return out;
}

template <class E>
size_t tensor_quotient_dim(const Presentation<E>& pres, int n) {
    if (n < 2) return size_t(1) << (2 * n);
    const size_t N = size_t(1) << (2 * n);
    Mat<E> M(0, N, pres.zero);
    for (int i = 0; i + 2 <= n; ++i) {
        const size_t pre = size_t(1) << (2 * i);
        const size_t suf = size_t(1) << (2 * (n - 2 - i));
        for (size_t u = 0; u < pre; ++u)
            for (size_t v = 0; v < suf; ++v)
                for (const auto& r : pres.rels) {
                    Vec<E> row(N, pres.zero);
                    for (int ij = 0; ij < 16; ++ij)
                        if (!r[ij].is_zero()) row[(u * 16 + size_t(ij)) * suf + v] = r[ij];
                    M.append_row(row);
                }
    }
    return N - rref(M);
}

template <class E>
bool is_central_deg2(const GradedAlgebra<E>& A, const Vec<E>& z) {
    for (int g = 0; g < 4; ++g) {
        Vec<E> x = A.gen(g);
        Vec<E> l = A.mul(z, 2, x, 1), r = A.mul(x, 1, z, 2);
        for (size_t k = 0; k < l.size(); ++k)
            if (l[k] != r[k]) return false;
    }
    return true;
}

template <class E>
static bool same_relation_space(const Presentation<E>& pres, const Mat<E>& img) {
    RowSpace<E> a(pres.relation_matrix()), b(img);
    return a.dim() == b.dim() && a == b;
}

template <class E>
bool is_graded_automorphism(const Presentation<E>& pres, const GeneratorMap<E>& m) {
    if (determinant(m, pres.zero, pres.one).is_zero()) return false;
    Mat<E> img(pres.rels.size(), 16, pres.zero);
    for (size_t r = 0; r < pres.rels.size(); ++r)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const E& c = pres.rels[r][i * 4 + j];
                if (c.is_zero()) continue;
                for (int k = 0; k < 4; ++k) {
                    if (m(k, i).is_zero()) continue;
                    E ck = c * m(k, i);
                    for (int l = 0; l < 4; ++l)
                        if (!m(l, j).is_zero()) img(r, k * 4 + l) += ck * m(l, j);
                }
            }
    return same_relation_space(pres, img);
}

template <class E>
bool is_graded_antiautomorphism(const Presentation<E>& pres, const GeneratorMap<E>& m) {
    if (determinant(m, pres.zero, pres.one).is_zero()) return false;
    Mat<E> img(pres.rels.size(), 16, pres.zero);
    for (size_t r = 0; r < pres.rels.size(); ++r)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const E& c = pres.rels[r][i * 4 + j];
                if (c.is_zero()) continue;
                for (int k = 0; k < 4; ++k) {
                    if (m(k, i).is_zero()) continue;
                    E ck = c * m(k, i);
                    for (int l = 0; l < 4; ++l)
                        if (!m(l, j).is_zero()) img(r, l * 4 + k) += ck * m(l, j);
                }
            }
    return same_relation_space(pres, img);
}

template <class E>
std::array<Mat<E>, 4> quaternion_units(const Params<E>& P, const E& zero, const E& one) {
    std::array<Mat<E>, 4> q;
    for (auto& m : q) m = Mat<E>(2, 2, zero);
    q[0](0, 0) = one;
    q[0](1, 1) = one;
    q[1](0, 0) = P.i;
    q[1](1, 1) = -P.i;
    q[2](0, 1) = P.i;
    q[2](1, 0) = P.i;
    q[3](0, 1) = -one;
    q[3](1, 0) = one;
    return q;
}

template <class E>
NamedMaps<E> named_maps(const Params<E>& P, const E& zero, const E& one) {
    NamedMaps<E> N;
    const E &a = P.a, &b = P.b, &c = P.c, &i = P.i;
    static const int sg[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
    for (int j = 0; j < 4; ++j) {
        N.gamma[j] = Mat<E>(4, 4, zero);
        for (int k = 0; k < 4; ++k) N.gamma[j](k, k) = sg[j][k] > 0 ? one : -one;
    }
    auto put = [&](Mat<E>& m, int src, int dst, const E& v) { m(dst, src) = v; };
    for (auto& m : N.phi) m = Mat<E>(4, 4, zero);
    for (auto& m : N.psi) m = Mat<E>(4, 4, zero);
    N.phi[0] = identity(4, zero, one);
    N.psi[0] = identity(4, zero, one);
    put(N.phi[1], 0, 1, b * c);
    put(N.phi[1], 1, 0, -i);
    put(N.phi[1], 2, 3, -(i * b));
    put(N.phi[1], 3, 2, -c);
    put(N.phi[2], 0, 2, a * c);
    put(N.phi[2], 1, 3, -a);
    put(N.phi[2], 2, 0, -i);
    put(N.phi[2], 3, 1, -(i * c));
    put(N.phi[3], 0, 3, a * b);
    put(N.phi[3], 1, 2, -(i * a));
    put(N.phi[3], 2, 1, -b);
    put(N.phi[3], 3, 0, -i);

    put(N.psi[1], 0, 1, i * b * c);
    put(N.psi[1], 1, 0, -one);
    put(N.psi[1], 2, 3, -b);
    put(N.psi[1], 3, 2, -(i * c));
    put(N.psi[2], 0, 2, i * a * c);
    put(N.psi[2], 1, 3, i * a);
    put(N.psi[2], 2, 0, -one);
    put(N.psi[2], 3, 1, c);
    put(N.psi[3], 0, 3, a * b);
    put(N.psi[3], 1, 2, -(i * a));
    put(N.psi[3], 2, 1, -b);
    put(N.psi[3], 3, 0, -i);

    E miabc = -(i * a * b * c);
    N.nu_sq[0] = one;
    N.nu_sq[1] = miabc / a;
    N.nu_sq[2] = miabc / b;
    N.nu_sq[3] = miabc / c;
    N.eps[0] = identity(4, zero, one);
    N.has_eps = true;
    for (int j = 1; j <= 3; ++j) {
        E nu;
        if (!try_sqrt(N.nu_sq[j], nu)) {
            N.has_eps = false;
            break;
        }
        N.eps[j] = mat_scale(N.phi[j], nu.inv());
    }
    if (!N.has_eps)
        for (int j = 1; j <= 3; ++j) N.eps[j] = Mat<E>();
    return N;
}

#define TW_INST(E)                                                                                   \
    template Presentation<E> presentation_S(const Params<E>&, const E&, const E&);                  \
    template Presentation<E> presentation_A(const Params<E>&, const E&, const E&);                  \
    template struct Presentation<E>;                                                                  \
    template class GradedAlgebra<E>;                                                                  \
    template size_t tensor_quotient_dim(const Presentation<E>&, int);                                \
    template bool is_central_deg2(const GradedAlgebra<E>&, const Vec<E>&);                           \
    template bool is_graded_automorphism(const Presentation<E>&, const GeneratorMap<E>&);            \
    template bool is_graded_antiautomorphism(const Presentation<E>&, const GeneratorMap<E>&);        \
    template std::array<Mat<E>, 4> quaternion_units(const Params<E>&, const E&, const E&);           \
    template NamedMaps<E> named_maps(const Params<E>&, const E&, const E&);

TW_INST(Fp2)
TW_INST(Tower)

} // namespace tw
