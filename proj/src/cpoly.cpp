#include "twist/cpoly.hpp"

#include <map>
#include <numeric>
#include <type_traits>

namespace tw {

namespace {

template <class E>
using Terms = std::vector<std::pair<Mono, E>>;

// out = a[start..] + c * m * g
template <class E>
void axpy(Terms<E>& out, const Terms<E>& a, size_t start, const Terms<E>& g, const Mono& m, const E& c,
          const MonoOrder& ord) {
    out.clear();
    out.reserve(a.size() - start + g.size());
    size_t i = start, j = 0;
    while (i < a.size() || j < g.size()) {
        if (j == g.size()) {
            out.push_back(a[i++]);
            continue;
        }
        Mono gm = g[j].first * m;
        int s = i == a.size() ? -1 : ord.cmp(a[i].first, gm);
        if (s > 0) {
            out.push_back(a[i++]);
        } else if (s < 0) {
            E v = g[j++].second * c;
            if (!v.is_zero()) out.push_back({gm, v});
        } else {
            E v = a[i++].second + g[j++].second * c;
            if (!v.is_zero()) out.push_back({gm, v});
        }
    }
}

std::string coeff_str(const std::string& c) {
    bool compound = c.find_first_of("+-*/", 1) != std::string::npos;
    return compound ? "(" + c + ")" : c;
}

} // namespace

template <class E>
std::string Poly<E>::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::string s;
    for (size_t k = 0; k < t_.size(); ++k) {
        const auto& [m, c] = t_[k];
        std::string mon;
        for (int v = 0; v < n_; ++v) {
            if (!m.e[v]) continue;
            if (!mon.empty()) mon += "*";
            mon += v < int(names.size()) ? names[v] : "x" + std::to_string(v);
            if (m.e[v] > 1) mon += "^" + std::to_string(m.e[v]);
        }
        std::string cs = c.str();
        std::string term;
        if (mon.empty())
            term = coeff_str(cs);
        else if (c == one_of(zero_))
            term = mon;
        else
            term = coeff_str(cs) + "*" + mon;
        s += (k ? " + " : "") + term;
    }
    return s;
}

template <class E>
Poly<E> reduce_by(const Poly<E>& f, const std::vector<Poly<E>>& G, size_t* steps) {
    const MonoOrder& ord = f.order();
    const int n = f.nvars();
    Terms<E> p = f.terms(), tmp, rem;
    size_t start = 0;
    while (start < p.size()) {
        const auto& [m, c] = p[start];
        const Poly<E>* div = nullptr;
        for (const auto& g : G)
            if (!g.is_zero() && g.lm().divides(m, n)) {
                div = &g;
                break;
            }
        if (!div) {
            rem.push_back(p[start++]);
            continue;
        }
        Mono q = div->lm().quotient_of(m);
        E coef = -(c / div->lc());
        axpy(tmp, p, start, div->terms(), q, coef, ord);
        std::swap(p, tmp);
        start = 0;
        if (steps) ++*steps;
    }
    return Poly<E>::from_terms(n, rem, f.zero(), ord);
}

template <class E>
Poly<E> GroebnerBasis<E>::normal_form(const Poly<E>& f) const {
    return reduce_by(f.with_order(order), g);
}

namespace {

template <class E>
Poly<E> spoly(const Poly<E>& f, const Poly<E>& g) {
    Mono l = f.lm().lcm(g.lm());
    Poly<E> a = f.mul_term(f.lm().quotient_of(l), g.lc());
    return a.fused_add(g, g.lm().quotient_of(l), -f.lc());
}

struct Pair {
    size_t i, j;
    Mono lcm;
};

} // namespace

template <class E>
GroebnerBasis<E> buchberger(std::vector<Poly<E>> gens, MonoOrder order, const GroebnerLimits& lim) {
    GroebnerBasis<E> out;
    std::vector<Poly<E>> in;
    int n = 0;
    for (auto& g : gens) {
        n = std::max(n, g.nvars());
        if (!g.is_zero()) in.push_back(g);
    }
    order.nvars = n;
    out.order = order;
    if constexpr (!std::is_same_v<E, Fp2>) {
        size_t terms = 0;
        for (auto& g : in) terms += g.size();
        if (terms > lim.symbolic_terms) throw SizeGuardError("symbolic Groebner input exceeds the size guard");
    }
    for (auto& g : in) g = g.with_order(order).monic();
    std::sort(in.begin(), in.end(), [&](const Poly<E>& a, const Poly<E>& b) { return order.cmp(a.lm(), b.lm()) < 0; });

    std::vector<Poly<E>> G;
    std::vector<char> active;
    std::vector<Pair> B;

    auto update = [&](size_t h) {
        const Mono& lh = G[h].lm();
        std::vector<Pair> C, D;
        for (size_t g = 0; g < h; ++g)
            if (active[g]) C.push_back({g, h, G[g].lm().lcm(lh)});
        for (size_t k = 0; k < C.size(); ++k) {
            bool keep = G[C[k].i].lm().coprime(lh, n);
            if (!keep) {
                keep = true;
                for (size_t l = 0; l < C.size() && keep; ++l)
                    if (l != k && C[l].lcm.divides(C[k].lcm, n) && !(C[l].lcm == C[k].lcm && l > k)) keep = false;
                for (auto& d : D)
                    if (keep && d.lcm.divides(C[k].lcm, n)) keep = false;
            }
            if (keep) D.push_back(C[k]);
        }
        std::vector<Pair> nb;
        for (auto& p : B) {
            bool drop = lh.divides(p.lcm, n) && !(G[p.i].lm().lcm(lh) == p.lcm) && !(G[p.j].lm().lcm(lh) == p.lcm);
            if (!drop) nb.push_back(p);
        }
        for (auto& d : D)
            if (!G[d.i].lm().coprime(lh, n)) nb.push_back(d);
        B = std::move(nb);
        for (size_t g = 0; g < h; ++g)
            if (active[g] && lh.divides(G[g].lm(), n)) active[g] = 0;
    };

    auto active_list = [&]() {
        std::vector<Poly<E>> a;
        for (size_t k = 0; k < G.size(); ++k)
            if (active[k]) a.push_back(G[k]);
        return a;
    };

    for (auto& f : in) {
        auto r = reduce_by(f, active_list());
        if (r.is_zero()) continue;
        G.push_back(r.monic());
        active.push_back(1);
        update(G.size() - 1);
        if (G.back().lm().deg == 0) break;
    }
    std::vector<Poly<E>> act = active_list();
    while (!B.empty()) {
        if (out.stats.pairs > lim.max_pairs) throw SizeGuardError("Groebner pair limit exceeded");
        size_t best = 0;
        for (size_t k = 1; k < B.size(); ++k)
            if (order.cmp(B[k].lcm, B[best].lcm) < 0) best = k;
        Pair pr = B[best];
        B.erase(B.begin() + best);
        ++out.stats.pairs;
        auto s = spoly(G[pr.i], G[pr.j]);
        auto r = reduce_by(s, act, &out.stats.reductions);
        if (r.is_zero()) {
            ++out.stats.zero_reductions;
            continue;
        }
        if (r.size() > lim.max_terms) throw SizeGuardError("Groebner term limit exceeded");
        G.push_back(r.monic());
        active.push_back(1);
        update(G.size() - 1);
        act = active_list();
        if (G.back().lm().deg == 0) {
            B.clear();
            break;
        }
    }

    // minimal then reduced
    std::vector<Poly<E>> M;
    for (size_t k = 0; k < G.size(); ++k) {
        if (!active[k]) continue;
        bool redundant = false;
        for (size_t l = 0; l < G.size() && !redundant; ++l)
            if (l != k && active[l] && G[l].lm().divides(G[k].lm(), n) &&
                (!(G[l].lm() == G[k].lm()) || l < k))
                redundant = true;
        if (!redundant) M.push_back(G[k]);
    }
    for (size_t k = 0; k < M.size(); ++k) {
        std::vector<Poly<E>> others;
        for (size_t l = 0; l < M.size(); ++l)
            if (l != k) others.push_back(M[l]);
        Poly<E> lead = Poly<E>::monomial(n, M[k].lm(), M[k].lc(), M[k].zero(), order);
        Poly<E> tail = M[k] - lead;
        M[k] = (lead + reduce_by(tail, others)).monic();
    }
    std::sort(M.begin(), M.end(), [&](const Poly<E>& a, const Poly<E>& b) { return order.cmp(a.lm(), b.lm()) < 0; });
    out.g = std::move(M);
    out.reduced = true;
    return out;
}

template <class E>
std::vector<Poly<E>> minors(const std::vector<std::vector<Poly<E>>>& m, int k) {
    const int R = int(m.size()), C = R ? int(m[0].size()) : 0;
    if (k > std::min(R, C) || k < 1) throw std::invalid_argument("minor size out of range");
    std::vector<Poly<E>> out;
    const Poly<E>& any = m[0][0];
    std::vector<int> rows(k);
    std::function<void(int, int)> pick_rows;
    auto for_rows = [&]() {
        std::map<uint32_t, Poly<E>> memo;
        // det of rows[d..k-1] against column mask of size k - d
        std::function<Poly<E>(int, uint32_t)> det = [&](int d, uint32_t mask) -> Poly<E> {
            if (d == k) return Poly<E>::constant(any.nvars(), one_of(any.zero()), any.zero(), any.order());
            auto it = memo.find(mask);
            if (it != memo.end()) return it->second;
            Poly<E> s(any.nvars(), any.zero(), any.order());
            int pos = 0;
            for (int c = 0; c < C; ++c) {
                if (!(mask >> c & 1)) continue;
                const auto& entry = m[rows[d]][c];
                if (!entry.is_zero()) {
                    Poly<E> sub = det(d + 1, mask & ~(1u << c));
                    Poly<E> t = entry * sub;
                    s = pos % 2 ? s - t : s + t;
                }
                ++pos;
            }
            memo.emplace(mask, s);
            return s;
        };
        std::vector<int> cols(k);
        std::function<void(int, int)> pick_cols = [&](int idx, int from) {
            if (idx == k) {
                uint32_t mask = 0;
                for (int c : cols) mask |= 1u << c;
                out.push_back(det(0, mask));
                return;
            }
            for (int c = from; c < C; ++c) {
                cols[idx] = c;
                pick_cols(idx + 1, c + 1);
            }
        };
        pick_cols(0, 0);
    };
    pick_rows = [&](int idx, int from) {
        if (idx == k) {
            for_rows();
            return;
        }
        for (int r = from; r < R; ++r) {
            rows[idx] = r;
            pick_rows(idx + 1, r + 1);
        }
    };
    pick_rows(0, 0);
    return out;
}

template <class E>
Poly<E> determinant_poly(const std::vector<std::vector<Poly<E>>>& m) {
    if (m.empty() || m.size() != m[0].size()) throw std::invalid_argument("determinant of non-square matrix");
    return minors(m, int(m.size())).front();
}

namespace {

using IPoly = std::vector<long long>;

IPoly imul(const IPoly& a, const IPoly& b) {
    IPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

IPoly iadd(IPoly a, const IPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

IPoly one_minus_t_pow(int d) {
    IPoly r(d + 1, 0);
    r[0] = 1;
    r[d] -= 1;
    return r;
}

std::vector<Mono> minimalize(std::vector<Mono> m, int n) {
    std::sort(m.begin(), m.end(), [](const Mono& a, const Mono& b) { return a.deg < b.deg; });
    std::vector<Mono> r;
    for (auto& x : m) {
        bool red = false;
        for (auto& y : r)
            if (y.divides(x, n)) {
                red = true;
                break;
            }
        if (!red) r.push_back(x);
    }
    return r;
}

IPoly hn(std::vector<Mono> I, int n) {
    I = minimalize(std::move(I), n);
    if (I.empty()) return {1};
    for (auto& m : I)
        if (m.deg == 0) return {0};
    // split off generators coprime to all others
    for (size_t k = 0; k < I.size(); ++k) {
        bool cop = true;
        for (size_t l = 0; l < I.size() && cop; ++l)
            if (l != k && !I[k].coprime(I[l], n)) cop = false;
        if (cop) {
            Mono m = I[k];
            I.erase(I.begin() + k);
            return imul(one_minus_t_pow(m.deg), hn(std::move(I), n));
        }
    }
    // pivot on the variable occurring in most generators
    int best = 0, cnt = -1;
    for (int v = 0; v < n; ++v) {
        int c = 0;
        for (auto& m : I) c += m.e[v] ? 1 : 0;
        if (c > cnt) {
            cnt = c;
            best = v;
        }
    }
    Mono x;
    x.e[best] = 1;
    x.deg = 1;
    std::vector<Mono> plus, colon;
    for (auto& m : I) {
        if (!m.e[best]) plus.push_back(m);
        Mono q = m;
        if (q.e[best]) {
            --q.e[best];
            --q.deg;
        }
        colon.push_back(q);
    }
    plus.push_back(x);
    IPoly a = hn(std::move(plus), n);
    IPoly b = imul({0, 1}, hn(std::move(colon), n));
    return iadd(a, b);
}

} // namespace

std::vector<long long> hilbert_numerator(std::vector<Mono> mons, int n) {
    IPoly r = hn(std::move(mons), n);
    while (r.size() > 1 && r.back() == 0) r.pop_back();
    return r;
}

std::vector<long long> hilbert_function(const std::vector<Mono>& mons, int n, int dmax) {
    IPoly num = hilbert_numerator(mons, n);
    // series of 1/(1-t)^n: C(d+n-1, n-1)
    std::vector<long long> out(dmax + 1, 0);
    for (int d = 0; d <= dmax; ++d) {
        long long s = 0;
        for (size_t k = 0; k < num.size() && int(k) <= d; ++k) {
            int m = d - int(k);
            // binom(m + n - 1, n - 1)
            long long b = 1;
            for (int t = 1; t < n; ++t) b = b * (m + t) / t;
            if (n == 0) b = m == 0 ? 1 : 0;
            s += num[k] * b;
        }
        out[d] = s;
    }
    return out;
}

template <class E>
DimDegree proj_dim_degree(const GroebnerBasis<E>& G, int nvars) {
    DimDegree r;
    r.basis_size = G.g.size();
    std::vector<Mono> lm;
    for (auto& g : G.g) lm.push_back(g.lm());
    IPoly num = hilbert_numerator(lm, nvars);
    int k = nvars;
    auto at1 = [](const IPoly& p) { return std::accumulate(p.begin(), p.end(), 0LL); };
    while (k > 0 && at1(num) == 0) {
        // divide by (1 - t)
        IPoly q(num.size() - 1, 0);
        long long carry = 0;
        for (size_t i = 0; i + 1 < num.size(); ++i) {
            carry += num[i];
            q[i] = carry;
        }
        num = q.empty() ? IPoly{0} : q;
        --k;
    }
    r.numerator = num;
    if (k == 0) {
        r.empty = true;
        r.dim = -1;
        r.degree = 0;
    } else {
        r.dim = k - 1;
        r.degree = at1(num);
    }
    return r;
}

template <class E>
DimDegree proj_dim_degree(const std::vector<Poly<E>>& gens, int nvars, GroebnerBasis<E>* out) {
    for (auto& g : gens)
        if (!g.is_homogeneous()) throw std::invalid_argument("generators must be homogeneous");
    auto G = buchberger(gens);
    auto r = proj_dim_degree(G, nvars);
    if (out) *out = std::move(G);
    return r;
}

namespace {

template <class E>
Poly<E> swap_vars(const Poly<E>& f, int a, int b) {
    std::vector<std::pair<Mono, E>> ts;
    for (auto t : f.terms()) {
        std::swap(t.first.e[a], t.first.e[b]);
        ts.push_back(t);
    }
    return Poly<E>::from_terms(f.nvars(), ts, f.zero(), f.order());
}

} // namespace

template <class E>
GroebnerBasis<E> saturate_by_variable(const std::vector<Poly<E>>& gens, int k) {
    if (gens.empty()) throw std::invalid_argument("empty ideal");
    const int n = gens[0].nvars();
    std::vector<Poly<E>> sw;
    for (auto& g : gens) {
        if (!g.is_homogeneous()) throw std::invalid_argument("generators must be homogeneous");
        sw.push_back(swap_vars(g, k, n - 1));
    }
    auto G = buchberger(sw);
    std::vector<Poly<E>> div;
    for (auto& g : G.g) {
        int e = 255;
        for (auto& t : g.terms()) e = std::min<int>(e, t.first.e[n - 1]);
        std::vector<std::pair<Mono, E>> ts;
        for (auto t : g.terms()) {
            t.first.e[n - 1] = uint8_t(t.first.e[n - 1] - e);
            t.first.deg = uint16_t(t.first.deg - e);
            ts.push_back(t);
        }
        div.push_back(swap_vars(Poly<E>::from_terms(n, ts, g.zero(), g.order()), k, n - 1));
    }
    return buchberger(div);
}

namespace {

template <class E>
struct Parser {
    const std::string& s;
    const std::vector<std::string>& names;
    const std::function<E(long long)>& from_int;
    E zero;
    size_t pos = 0;
    int n;

    void ws() {
        while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& m) {
        throw std::invalid_argument("polynomial parse error at " + std::to_string(pos) + ": " + m);
    }
    Poly<E> expr() {
        ws();
        Poly<E> r = term();
        for (;;) {
            ws();
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                char op = s[pos++];
                Poly<E> t = term();
                r = op == '+' ? r + t : r - t;
            } else {
                return r;
            }
        }
    }
    Poly<E> term() {
        Poly<E> r = factor();
        for (;;) {
            ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                r = r * factor();
            } else if (pos < s.size() && (isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '(')) {
                r = r * factor();
            } else {
                return r;
            }
        }
    }
    Poly<E> factor() {
        ws();
        if (pos < s.size() && s[pos] == '-') {
            ++pos;
            return -factor();
        }
        Poly<E> b = base();
        ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            ws();
            size_t st = pos;
            while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (st == pos) fail("exponent expected");
            b = b.pow(unsigned(std::stoul(s.substr(st, pos - st))));
        }
        return b;
    }
    Poly<E> base() {
        ws();
        if (pos >= s.size()) fail("unexpected end");
        if (s[pos] == '(') {
            ++pos;
            Poly<E> r = expr();
            ws();
            if (pos >= s.size() || s[pos] != ')') fail("')' expected");
            ++pos;
            return r;
        }
        if (isdigit(static_cast<unsigned char>(s[pos]))) {
            size_t st = pos;
            while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return Poly<E>::constant(n, from_int(std::stoll(s.substr(st, pos - st))), zero);
        }
        int best = -1;
        size_t blen = 0;
        for (size_t k = 0; k < names.size(); ++k)
            if (names[k].size() > blen && s.compare(pos, names[k].size(), names[k]) == 0) {
                best = int(k);
                blen = names[k].size();
            }
        if (best < 0) fail("unknown symbol");
        pos += blen;
        return Poly<E>::var(n, best, from_int(1), zero);
    }
};

} // namespace

template <class E>
Poly<E> parse_poly(const std::string& s, const std::vector<std::string>& names,
                   const std::function<E(long long)>& from_int, const E& zero) {
    Parser<E> p{s, names, from_int, zero, 0, int(names.size())};
    Poly<E> r = p.expr();
    p.ws();
    if (p.pos != s.size()) p.fail("trailing input");
    return r;
}

#define TW_INST(E)                                                                                           \
    template class Poly<E>;                                                                                  \
    template struct GroebnerBasis<E>;                                                                        \
    template Poly<E> reduce_by(const Poly<E>&, const std::vector<Poly<E>>&, size_t*);                        \
    template GroebnerBasis<E> buchberger(std::vector<Poly<E>>, MonoOrder, const GroebnerLimits&);            \
    template std::vector<Poly<E>> minors(const std::vector<std::vector<Poly<E>>>&, int);                     \
    template Poly<E> determinant_poly(const std::vector<std::vector<Poly<E>>>&);                             \
    template DimDegree proj_dim_degree(const GroebnerBasis<E>&, int);                                        \
    template DimDegree proj_dim_degree(const std::vector<Poly<E>>&, int, GroebnerBasis<E>*);                 \
    template GroebnerBasis<E> saturate_by_variable(const std::vector<Poly<E>>&, int);                        \
    template Poly<E> parse_poly(const std::string&, const std::vector<std::string>&,                         \
                                const std::function<E(long long)>&, const E&);

TW_INST(Fp2)
TW_INST(Tower)

} // namespace tw
