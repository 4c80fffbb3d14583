#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twist/fp2.hpp"
#include "twist/linalg.hpp"
#include "twist/tower.hpp"

namespace tw {

inline constexpr int kMaxVars = 12;

inline Fp2 one_of(const Fp2& z) { return {1, 0, z.k}; }
inline Tower one_of(const Tower&) { return Tower(1L); }

struct Mono {
    std::array<uint8_t, kMaxVars> e{};
    uint16_t deg = 0;

    bool operator==(const Mono& o) const { return e == o.e; }
    bool divides(const Mono& o, int n) const {
        for (int k = 0; k < n; ++k)
            if (e[k] > o.e[k]) return false;
        return true;
    }
    Mono operator*(const Mono& o) const {
        Mono r;
        for (int k = 0; k < kMaxVars; ++k) r.e[k] = uint8_t(e[k] + o.e[k]);
        r.deg = uint16_t(deg + o.deg);
        return r;
    }
    // o / this, assuming divisibility
    Mono quotient_of(const Mono& o) const {
        Mono r;
        for (int k = 0; k < kMaxVars; ++k) r.e[k] = uint8_t(o.e[k] - e[k]);
        r.deg = uint16_t(o.deg - deg);
        return r;
    }
    Mono lcm(const Mono& o) const {
        Mono r;
        for (int k = 0; k < kMaxVars; ++k) {
            r.e[k] = std::max(e[k], o.e[k]);
            r.deg = uint16_t(r.deg + r.e[k]);
        }
        return r;
    }
    bool coprime(const Mono& o, int n) const {
        for (int k = 0; k < n; ++k)
            if (e[k] && o.e[k]) return false;
        return true;
    }
};

struct MonoOrder {
    enum Kind { grevlex, lex, block };
    Kind kind = grevlex;
    // block: grevlex on the first `split` variables, then grevlex on the rest
    int split = 0;
    int nvars = 0;

    bool operator==(const MonoOrder& o) const { return kind == o.kind && split == o.split && nvars == o.nvars; }
    // +1 if a > b, -1 if a < b, 0 if equal
    int cmp(const Mono& a, const Mono& b) const {
        switch (kind) {
        case lex:
            for (int k = 0; k < nvars; ++k)
                if (a.e[k] != b.e[k]) return a.e[k] > b.e[k] ? 1 : -1;
            return 0;
        case grevlex: return cmp_grevlex(a, b, 0, nvars);
        case block: {
            int c = cmp_grevlex(a, b, 0, split);
            return c ? c : cmp_grevlex(a, b, split, nvars);
        }
        }
        return 0;
    }

private:
    static int cmp_grevlex(const Mono& a, const Mono& b, int lo, int hi) {
        int da = 0, db = 0;
        for (int k = lo; k < hi; ++k) {
            da += a.e[k];
            db += b.e[k];
        }
        if (da != db) return da > db ? 1 : -1;
        for (int k = hi; k-- > lo;)
            if (a.e[k] != b.e[k]) return a.e[k] < b.e[k] ? 1 : -1;
        return 0;
    }
};

// Sparse polynomial; terms held in strictly decreasing monomial order, no zero coefficients.
template <class E>
class Poly {
public:
    using Term = std::pair<Mono, E>;

    Poly() = default;
    Poly(int nvars, const E& zero, MonoOrder ord = {}) : n_(nvars), zero_(zero), ord_(ord) {
        if (nvars > kMaxVars) throw std::invalid_argument("too many variables");
        ord_.nvars = nvars;
    }

    static Poly constant(int nvars, const E& c, const E& zero, MonoOrder ord = {}) {
        Poly p(nvars, zero, ord);
        if (!c.is_zero()) p.t_.push_back({Mono{}, c});
        return p;
    }
    static Poly var(int nvars, int k, const E& one, const E& zero, MonoOrder ord = {}) {
        Poly p(nvars, zero, ord);
        Mono m;
        m.e[k] = 1;
        m.deg = 1;
        p.t_.push_back({m, one});
        return p;
    }
    static Poly monomial(int nvars, const Mono& m, const E& c, const E& zero, MonoOrder ord = {}) {
        Poly p(nvars, zero, ord);
        if (!c.is_zero()) p.t_.push_back({m, c});
        return p;
    }

    int nvars() const { return n_; }
    const E& zero() const { return zero_; }
    const MonoOrder& order() const { return ord_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    const Mono& lm() const { return t_.front().first; }
    const E& lc() const { return t_.front().second; }
    int degree() const {
        int d = -1;
        for (auto& t : t_) d = std::max<int>(d, t.first.deg);
        return d;
    }
    bool is_homogeneous() const {
        for (auto& t : t_)
            if (t.first.deg != t_.front().first.deg) return false;
        return true;
    }

    // re-sort under another order
    Poly with_order(MonoOrder o) const {
        o.nvars = n_;
        Poly r(n_, zero_, o);
        r.t_ = t_;
        r.sort_terms();
        return r;
    }

    Poly operator+(const Poly& o) const { return combine(o, false); }
    Poly operator-(const Poly& o) const { return combine(o, true); }
    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.t_) t.second = -t.second;
        return r;
    }
    Poly operator*(const Poly& o) const {
        Poly r(n_, zero_, ord_);
        if (t_.empty() || o.t_.empty()) return r;
        // accumulate by the smaller factor
        const Poly& a = t_.size() <= o.t_.size() ? *this : o;
        const Poly& b = t_.size() <= o.t_.size() ? o : *this;
        for (const auto& t : a.t_) r = r.fused_add(b, t.first, t.second);
        return r;
    }
    Poly scale(const E& c) const {
        Poly r(n_, zero_, ord_);
        if (c.is_zero()) return r;
        r.t_.reserve(t_.size());
        for (auto& t : t_) r.t_.push_back({t.first, t.second * c});
        return r;
    }
    Poly mul_term(const Mono& m, const E& c) const {
        Poly r(n_, zero_, ord_);
        if (c.is_zero()) return r;
        r.t_.reserve(t_.size());
        for (auto& t : t_) r.t_.push_back({t.first * m, t.second * c});
        return r;
    }
    Poly monic() const { return t_.empty() ? *this : scale(lc().inv()); }
    Poly pow(unsigned k) const {
        Poly r = constant(n_, one_like(), zero_, ord_);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    // this + c * m * g
    Poly fused_add(const Poly& g, const Mono& m, const E& c) const {
        Poly r(n_, zero_, ord_);
        r.t_.reserve(t_.size() + g.t_.size());
        size_t i = 0, j = 0;
        while (i < t_.size() || j < g.t_.size()) {
            if (j == g.t_.size()) {
                r.t_.push_back(t_[i++]);
                continue;
            }
            Mono gm = g.t_[j].first * m;
            int s = i == t_.size() ? -1 : ord_.cmp(t_[i].first, gm);
            if (s > 0) {
                r.t_.push_back(t_[i++]);
            } else if (s < 0) {
                E v = g.t_[j++].second * c;
                if (!v.is_zero()) r.t_.push_back({gm, v});
            } else {
                E v = t_[i++].second + g.t_[j++].second * c;
                if (!v.is_zero()) r.t_.push_back({gm, v});
            }
        }
        return r;
    }

    E eval(const std::vector<E>& x) const {
        E s = zero_;
        for (auto& t : t_) {
            E v = t.second;
            for (int k = 0; k < n_; ++k)
                for (int e = 0; e < t.first.e[k]; ++e) v = v * x[k];
            s += v;
        }
        return s;
    }

    // substitute polynomials for variables
    Poly compose(const std::vector<Poly>& xs) const {
        if (xs.empty()) throw std::invalid_argument("empty substitution");
        Poly r(xs[0].n_, zero_, xs[0].ord_);
        std::vector<std::vector<Poly>> pw(n_);
        for (auto& t : t_) {
            Poly m = constant(xs[0].n_, t.second, zero_, xs[0].ord_);
            for (int k = 0; k < n_; ++k) {
                if (!t.first.e[k]) continue;
                auto& v = pw[k];
                if (v.empty()) v.push_back(constant(xs[0].n_, one_like(), zero_, xs[0].ord_));
                while (int(v.size()) <= t.first.e[k]) v.push_back(v.back() * xs[k]);
                m = m * v[t.first.e[k]];
            }
            r = r + m;
        }
        return r;
    }

    bool operator==(const Poly& o) const {
        if (t_.size() != o.t_.size()) return false;
        for (size_t k = 0; k < t_.size(); ++k)
            if (!(t_[k].first == o.t_[k].first) || !(t_[k].second == o.t_[k].second)) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string str(const std::vector<std::string>& names = {}) const;

    // builds from unsorted terms, merging duplicates
    static Poly from_terms(int nvars, std::vector<Term> ts, const E& zero, MonoOrder ord = {}) {
        Poly p(nvars, zero, ord);
        p.t_ = std::move(ts);
        p.sort_terms();
        return p;
    }

private:
    E one_like() const { return one_of(zero_); }
    Poly combine(const Poly& o, bool neg) const {
        if (o.t_.empty()) return *this;
        E c = one_like();
        return fused_add(o, Mono{}, neg ? -c : c);
    }
    void sort_terms() {
        std::sort(t_.begin(), t_.end(), [&](const Term& a, const Term& b) { return ord_.cmp(a.first, b.first) > 0; });
        std::vector<Term> m;
        for (auto& t : t_) {
            if (!m.empty() && m.back().first == t.first)
                m.back().second += t.second;
            else
                m.push_back(t);
        }
        t_.clear();
        for (auto& t : m)
            if (!t.second.is_zero()) t_.push_back(t);
    }

    int n_ = 0;
    E zero_{};
    MonoOrder ord_{};
    std::vector<Term> t_;
};

struct GroebnerLimits {
    size_t max_pairs = 2000000;
    size_t max_terms = 200000;
    // symbolic scalars are refused above this many generator terms
    size_t symbolic_terms = 400;
};

struct GroebnerStats {
    size_t pairs = 0, reductions = 0, zero_reductions = 0;
};

template <class E>
struct GroebnerBasis {
    std::vector<Poly<E>> g;
    MonoOrder order;
    bool reduced = false;
    GroebnerStats stats;

    Poly<E> normal_form(const Poly<E>& f) const;
    bool contains(const Poly<E>& f) const { return normal_form(f).is_zero(); }
    bool is_unit() const { return g.size() == 1 && g[0].lm().deg == 0; }
};

struct SizeGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class E>
Poly<E> reduce_by(const Poly<E>& f, const std::vector<Poly<E>>& G, size_t* steps = nullptr);

template <class E>
GroebnerBasis<E> buchberger(std::vector<Poly<E>> gens, MonoOrder order = {}, const GroebnerLimits& lim = {});

// all k x k minors, row subsets outer, column subsets inner, both lexicographic
template <class E>
std::vector<Poly<E>> minors(const std::vector<std::vector<Poly<E>>>& m, int k);

template <class E>
Poly<E> determinant_poly(const std::vector<std::vector<Poly<E>>>& m);

// Hilbert series numerator of S / (monomials) for S in n variables, as integer coefficients
std::vector<long long> hilbert_numerator(std::vector<Mono> mons, int n);

struct DimDegree {
    bool empty = false;  // projective scheme is empty
    int dim = -1;        // projective dimension
    long long degree = 0;
    std::vector<long long> numerator;  // reduced numerator of the Hilbert series
    size_t basis_size = 0;
};

// projective dimension and degree from the Hilbert polynomial of a basis (shared with the saturation)
template <class E>
DimDegree proj_dim_degree(const GroebnerBasis<E>& G, int nvars);

template <class E>
DimDegree proj_dim_degree(const std::vector<Poly<E>>& gens, int nvars, GroebnerBasis<E>* out = nullptr);

// I : x_k^infinity via a grevlex basis with x_k last
template <class E>
GroebnerBasis<E> saturate_by_variable(const std::vector<Poly<E>>& gens, int k);

// Hilbert function values of S/I in degrees 0..dmax from the leading monomials
std::vector<long long> hilbert_function(const std::vector<Mono>& mons, int n, int dmax);

// parses sums of products of integers, named variables and parenthesized groups, with ^ powers
template <class E>
Poly<E> parse_poly(const std::string& s, const std::vector<std::string>& names,
                   const std::function<E(long long)>& from_int, const E& zero);

} // namespace tw
