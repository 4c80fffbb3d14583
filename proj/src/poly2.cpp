#include "twist/poly2.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace tw {

namespace {

constexpr uint64_t kP = 2305843009213693951ULL;  // 2^61 - 1

uint64_t mulm(uint64_t x, uint64_t y) { return uint64_t((unsigned __int128)x * y % kP); }
uint64_t addm(uint64_t x, uint64_t y) { uint64_t r = x + y; return r >= kP ? r - kP : r; }
uint64_t subm(uint64_t x, uint64_t y) { return x >= y ? x - y : x + kP - y; }
uint64_t powm(uint64_t b, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulm(r, b);
        b = mulm(b, b);
        e >>= 1;
    }
    return r;
}
uint64_t modp(const mpz_class& x) { return mpz_fdiv_ui(x.get_mpz_t(), kP); }

using MPoly = std::vector<uint64_t>;

void mtrim(MPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// degree of gcd over Z/kP, -1 for gcd(0,0)
int mod_gcd_degree(MPoly f, MPoly g) {
    mtrim(f);
    mtrim(g);
    while (!g.empty()) {
        if (f.size() >= g.size()) {
            uint64_t inv = powm(g.back(), kP - 2);
            while (f.size() >= g.size()) {
                uint64_t t = mulm(f.back(), inv);
                size_t s = f.size() - g.size();
                for (size_t j = 0; j < g.size(); ++j) f[s + j] = subm(f[s + j], mulm(t, g[j]));
                mtrim(f);
                if (f.empty()) break;
            }
        }
        std::swap(f, g);
    }
    return int(f.size()) - 1;
}

MPoly image(const UPoly& f) {
    MPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = modp(f[i]);
    return r;
}

uint64_t eval_at(const UPoly& f, uint64_t a0) {
    uint64_t r = 0;
    for (size_t i = f.size(); i-- > 0;) r = addm(mulm(r, a0), modp(f[i]));
    return r;
}

} // namespace

namespace up {

void trim(UPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly add(const UPoly& f, const UPoly& g) {
    UPoly r(std::max(f.size(), g.size()));
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] += g[i];
    trim(r);
    return r;
}

UPoly sub(const UPoly& f, const UPoly& g) {
    UPoly r(std::max(f.size(), g.size()));
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
    trim(r);
    return r;
}

UPoly mul(const UPoly& f, const UPoly& g) {
    if (f.empty() || g.empty()) return {};
    UPoly r(f.size() + g.size() - 1);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    }
    trim(r);
    return r;
}

UPoly neg(const UPoly& f) {
    UPoly r(f);
    for (auto& x : r) x = -x;
    return r;
}

UPoly scale(const UPoly& f, const mpz_class& s) {
    if (s == 0) return {};
    UPoly r(f);
    for (auto& x : r) x *= s;
    return r;
}

mpz_class content(const UPoly& f) {
    mpz_class g = 0;
    for (const auto& x : f) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

bool divides(const UPoly& g, const UPoly& f, UPoly* quo) {
    if (g.empty()) throw std::domain_error("division by the zero polynomial");
    if (f.empty()) {
        if (quo) quo->clear();
        return true;
    }
    if (f.size() < g.size()) return false;
    UPoly r(f);
    UPoly q(f.size() - g.size() + 1);
    const mpz_class& lg = g.back();
    for (size_t k = q.size(); k-- > 0;) {
        const mpz_class& top = r[k + g.size() - 1];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lg.get_mpz_t())) return false;
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lg.get_mpz_t());
        for (size_t j = 0; j < g.size(); ++j) r[k + j] -= t * g[j];
        q[k] = t;
    }
    for (const auto& x : r)
        if (x != 0) return false;
    trim(q);
    if (quo) *quo = std::move(q);
    return true;
}

UPoly divexact(const UPoly& f, const UPoly& g) {
    UPoly q;
    if (!divides(g, f, &q)) throw std::logic_error("inexact polynomial division");
    return q;
}

int sign_lc(const UPoly& f) { return f.empty() ? 0 : sgn(f.back()); }

static UPoly prem(UPoly r, const UPoly& g) {
    const mpz_class& lg = g.back();
    while (r.size() >= g.size()) {
        mpz_class lr = r.back();
        size_t s = r.size() - g.size();
        for (auto& x : r) x *= lg;
        for (size_t j = 0; j < g.size(); ++j) r[s + j] -= lr * g[j];
        trim(r);
    }
    return r;
}

static UPoly primitive(const UPoly& f) {
    mpz_class c = content(f);
    if (sign_lc(f) < 0) c = -c;
    UPoly r(f);
    for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return r;
}

UPoly gcd(const UPoly& f, const UPoly& g) {
    if (f.empty() && g.empty()) return {};
    if (f.empty()) return sign_lc(g) < 0 ? neg(g) : g;
    if (g.empty()) return sign_lc(f) < 0 ? neg(f) : f;
    mpz_class cf = content(f), cg = content(g), cz;
    mpz_gcd(cz.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
    if (f.size() == 1 || g.size() == 1) return UPoly{cz};
    if (modp(f.back()) != 0 && modp(g.back()) != 0 && mod_gcd_degree(image(f), image(g)) == 0) return UPoly{cz};
    UPoly a = primitive(f), b = primitive(g);
    if (a.size() < b.size()) std::swap(a, b);
    while (true) {
        if (b.size() == 1) return UPoly{cz};
        UPoly r = prem(a, b);
        if (r.empty()) break;
        a = std::move(b);
        b = primitive(r);
    }
    return scale(b, cz);
}

} // namespace up

BiPoly::BiPoly(long v) {
    if (v != 0) c.push_back(UPoly{mpz_class(v)});
}

BiPoly::BiPoly(const mpz_class& v) {
    if (v != 0) c.push_back(UPoly{v});
}

BiPoly BiPoly::var_a() {
    BiPoly r;
    r.c.push_back(UPoly{0, 1});
    return r;
}

BiPoly BiPoly::var_b() {
    BiPoly r;
    r.c.push_back(UPoly{});
    r.c.push_back(UPoly{1});
    return r;
}

bool BiPoly::is_one() const { return c.size() == 1 && c[0].size() == 1 && c[0][0] == 1; }

int BiPoly::deg_a() const {
    int d = -1;
    for (const auto& u : c) d = std::max(d, int(u.size()) - 1);
    return d;
}

size_t BiPoly::terms() const {
    size_t n = 0;
    for (const auto& u : c)
        for (const auto& x : u)
            if (x != 0) ++n;
    return n;
}

size_t BiPoly::cost() const {
    size_t n = 0;
    for (const auto& u : c)
        for (const auto& x : u)
            if (x != 0) n += 1 + mpz_sizeinbase(x.get_mpz_t(), 2) / 32;
    return n;
}

void BiPoly::trim() {
    while (!c.empty() && c.back().empty()) c.pop_back();
}

int BiPoly::sign() const { return c.empty() ? 0 : up::sign_lc(c.back()); }

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly r;
    r.c.resize(std::max(c.size(), o.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
        if (i < c.size() && i < o.c.size())
            r.c[i] = up::add(c[i], o.c[i]);
        else
            r.c[i] = i < c.size() ? c[i] : o.c[i];
    }
    r.trim();
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator-() const {
    BiPoly r(*this);
    for (auto& u : r.c)
        for (auto& x : u) x = -x;
    return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    BiPoly r;
    r.c.resize(c.size() + o.c.size() - 1);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].empty()) continue;
        for (size_t j = 0; j < o.c.size(); ++j) {
            if (o.c[j].empty()) continue;
            r.c[i + j] = up::add(r.c[i + j], up::mul(c[i], o.c[j]));
        }
    }
    r.trim();
    return r;
}

BiPoly BiPoly::scale(const UPoly& s) const {
    if (s.empty()) return {};
    BiPoly r;
    r.c.reserve(c.size());
    for (const auto& u : c) r.c.push_back(up::mul(u, s));
    r.trim();
    return r;
}

BiPoly BiPoly::divexact_u(const UPoly& s) const {
    if (s.size() == 1 && s[0] == 1) return *this;
    BiPoly r;
    r.c.reserve(c.size());
    for (const auto& u : c) r.c.push_back(up::divexact(u, s));
    return r;
}

namespace bp {

UPoly content(const BiPoly& f) {
    UPoly g;
    for (const auto& u : f.c) {
        if (u.empty()) continue;
        g = up::gcd(g, u);
        if (g.size() == 1 && g[0] == 1) break;
    }
    if (up::sign_lc(g) < 0) g = up::neg(g);
    return g;
}

static BiPoly shift_scale(const BiPoly& g, const UPoly& t, size_t s) {
    BiPoly r;
    r.c.assign(s, UPoly{});
    for (const auto& u : g.c) r.c.push_back(up::mul(u, t));
    r.trim();
    return r;
}

BiPoly divexact(const BiPoly& f, const BiPoly& g) {
    if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (g.is_one()) return f;
    if (g.deg_b() == 0) return f.divexact_u(g.c[0]);
    BiPoly q, r(f);
    while (!r.is_zero()) {
        if (r.deg_b() < g.deg_b()) throw std::logic_error("inexact polynomial division");
        UPoly t = up::divexact(r.lc(), g.lc());
        size_t s = size_t(r.deg_b() - g.deg_b());
        if (q.c.size() <= s) q.c.resize(s + 1);
        q.c[s] = t;
        r = r - shift_scale(g, t, s);
    }
    q.trim();
    return q;
}

static BiPoly prem(BiPoly r, const BiPoly& g) {
    const UPoly lg = g.lc();
    while (!r.is_zero() && r.deg_b() >= g.deg_b()) {
        UPoly lr = r.lc();
        size_t s = size_t(r.deg_b() - g.deg_b());
        r = r.scale(lg) - shift_scale(g, lr, s);
    }
    return r;
}

static BiPoly normalized(BiPoly f) {
    if (f.sign() < 0) f = -f;
    return f;
}

BiPoly gcd(const BiPoly& f, const BiPoly& g) {
    if (f.is_zero()) return normalized(g);
    if (g.is_zero()) return normalized(f);
    if (f.is_one() || g.is_one()) return BiPoly(1);
    UPoly cf = content(f), cg = content(g);
    UPoly cz = up::gcd(cf, cg);
    if (up::sign_lc(cz) < 0) cz = up::neg(cz);
    BiPoly a = f.divexact_u(cf), b = g.divexact_u(cg);
    if (a.deg_b() < b.deg_b()) std::swap(a, b);
    if (b.deg_b() > 0) {
        // coprimality certificate from one specialization a = a0 with nonvanishing leading coefficients
        for (uint64_t a0 = 1000003; a0 < 1000003 + 5 * 7919; a0 += 7919) {
            if (eval_at(a.lc(), a0) == 0 || eval_at(b.lc(), a0) == 0) continue;
            MPoly fa(a.c.size()), fb(b.c.size());
            for (size_t j = 0; j < a.c.size(); ++j) fa[j] = eval_at(a.c[j], a0);
            for (size_t j = 0; j < b.c.size(); ++j) fb[j] = eval_at(b.c[j], a0);
            if (mod_gcd_degree(fa, fb) == 0) {
                BiPoly r;
                r.c.push_back(cz);
                return r;
            }
            break;
        }
    }
    while (true) {
        if (b.deg_b() == 0) {
            BiPoly r;
            r.c.push_back(cz);
            return r;
        }
        BiPoly r = prem(a, b);
        if (r.is_zero()) break;
        r = r.divexact_u(content(r));
        a = std::move(b);
        b = std::move(r);
    }
    return normalized(b.scale(cz));
}

static std::string mono(size_t i, size_t j) {
    std::string s;
    if (i > 0) s += i == 1 ? "a" : "a^" + std::to_string(i);
    if (j > 0) {
        if (!s.empty()) s += "*";
        s += j == 1 ? "b" : "b^" + std::to_string(j);
    }
    return s;
}

void render_terms(const BiPoly& f, const std::string& suffix, std::string& out, bool& first) {
    for (size_t j = f.c.size(); j-- > 0;) {
        const UPoly& u = f.c[j];
        for (size_t i = u.size(); i-- > 0;) {
            if (u[i] == 0) continue;
            mpz_class x = u[i];
            bool negative = x < 0;
            if (negative) x = -x;
            std::string m = mono(i, j);
            if (!suffix.empty()) m += m.empty() ? suffix : "*" + suffix;
            std::string t;
            if (m.empty())
                t = x.get_str();
            else if (x == 1)
                t = m;
            else
                t = x.get_str() + "*" + m;
            if (first)
                out += negative ? "-" + t : t;
            else
                out += negative ? " - " + t : " + " + t;
            first = false;
        }
    }
}

} // namespace bp

std::string BiPoly::str() const {
    std::string out;
    bool first = true;
    bp::render_terms(*this, "", out, first);
    return first ? "0" : out;
}

RatFun::RatFun(const BiPoly& n, const BiPoly& d) {
    if (d.is_zero()) throw std::domain_error("division by the zero rational function");
    if (n.is_zero()) {
        num_ = BiPoly();
        den_ = BiPoly(1);
        return;
    }
    BiPoly g = bp::gcd(n, d);
    num_ = bp::divexact(n, g);
    den_ = bp::divexact(d, g);
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RatFun RatFun::raw(BiPoly n, BiPoly d) {
    RatFun r;
    if (n.is_zero()) return r;
    if (d.sign() < 0) {
        n = -n;
        d = -d;
    }
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) return raw(num_ + o.num_, BiPoly(1));
    if (den_ == o.den_) {
        BiPoly n = num_ + o.num_;
        if (n.is_zero()) return RatFun();
        BiPoly g = bp::gcd(n, den_);
        return raw(bp::divexact(n, g), bp::divexact(den_, g));
    }
    BiPoly g = bp::gcd(den_, o.den_);
    if (g.is_one()) return raw(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    BiPoly d1 = bp::divexact(den_, g), d2 = bp::divexact(o.den_, g);
    BiPoly n = num_ * d2 + o.num_ * d1;
    if (n.is_zero()) return RatFun();
    BiPoly h = bp::gcd(n, g);
    return raw(bp::divexact(n, h), d1 * bp::divexact(o.den_, h));
}

RatFun RatFun::operator-() const { return raw(-num_, den_); }

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o) const {
    if (is_zero() || o.is_zero()) return RatFun();
    if (den_.is_one() && o.den_.is_one()) return raw(num_ * o.num_, BiPoly(1));
    BiPoly g1 = o.den_.is_one() ? BiPoly(1) : bp::gcd(num_, o.den_);
    BiPoly g2 = den_.is_one() ? BiPoly(1) : bp::gcd(o.num_, den_);
    return raw(bp::divexact(num_, g1) * bp::divexact(o.num_, g2),
               bp::divexact(den_, g2) * bp::divexact(o.den_, g1));
}

RatFun RatFun::inv() const {
    if (is_zero()) throw std::domain_error("division by the zero rational function");
    return raw(den_, num_);
}

RatFun RatFun::operator/(const RatFun& o) const { return *this * o.inv(); }

std::string RatFun::str() const {
    if (den_.is_one()) return num_.str();
    std::string n = num_.str();
    if (num_.terms() > 1) n = "(" + n + ")";
    std::string d = den_.str();
    if (den_.terms() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

} // namespace tw
