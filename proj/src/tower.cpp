#include "twist/tower.hpp"

#include <cctype>
#include <stdexcept>

namespace tw {

const RatFun& Tower::gamma_rf() {
    static const RatFun g = [] {
        BiPoly a = BiPoly::var_a(), b = BiPoly::var_b();
        BiPoly a2 = a * a, b2 = b * b;
        return RatFun(-(a2 + b2), BiPoly(1) + a2 * b2);
    }();
    return g;
}

Tower Tower::sym_a() { return Tower(RatFun(BiPoly::var_a())); }
Tower Tower::sym_b() { return Tower(RatFun(BiPoly::var_b())); }
Tower Tower::sym_c() { return Tower(RatFun(), RatFun(), RatFun(1), RatFun()); }
Tower Tower::sym_i() { return Tower(RatFun(), RatFun(1), RatFun(), RatFun()); }

bool Tower::is_zero() const {
    return r_[0].is_zero() && r_[1].is_zero() && r_[2].is_zero() && r_[3].is_zero();
}

bool Tower::is_one() const {
    return r_[0].is_one() && r_[1].is_zero() && r_[2].is_zero() && r_[3].is_zero();
}

size_t Tower::cost() const {
    size_t n = 0;
    for (const auto& x : r_)
        if (!x.is_zero()) n += x.cost();
    return n;
}

Tower Tower::operator+(const Tower& o) const {
    return Tower(r_[0] + o.r_[0], r_[1] + o.r_[1], r_[2] + o.r_[2], r_[3] + o.r_[3]);
}

Tower Tower::operator-(const Tower& o) const {
    return Tower(r_[0] - o.r_[0], r_[1] - o.r_[1], r_[2] - o.r_[2], r_[3] - o.r_[3]);
}

Tower Tower::operator-() const { return Tower(-r_[0], -r_[1], -r_[2], -r_[3]); }

namespace {

struct Cx {
    RatFun re, im;
    bool zero() const { return re.is_zero() && im.is_zero(); }
};

Cx cmul(const Cx& x, const Cx& y) {
    if (x.zero() || y.zero()) return {};
    if (x.im.is_zero() && y.im.is_zero()) return {x.re * y.re, RatFun()};
    if (x.im.is_zero()) return {x.re * y.re, x.re * y.im};
    if (y.im.is_zero()) return {x.re * y.re, x.im * y.re};
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

Cx cadd(const Cx& x, const Cx& y) { return {x.re + y.re, x.im + y.im}; }

Cx cinv(const Cx& x) {
    if (x.im.is_zero()) return {x.re.inv(), RatFun()};
    if (x.re.is_zero()) return {RatFun(), -x.im.inv()};
    RatFun n = x.re * x.re + x.im * x.im;
    return {x.re / n, -x.im / n};
}

} // namespace

Tower Tower::operator*(const Tower& o) const {
    Cx x0{r_[0], r_[1]}, x1{r_[2], r_[3]};
    Cx y0{o.r_[0], o.r_[1]}, y1{o.r_[2], o.r_[3]};
    Cx base = cmul(x0, y0);
    Cx cc = cmul(x1, y1);
    if (!cc.zero()) base = cadd(base, cmul(cc, Cx{gamma_rf(), RatFun()}));
    Cx lin = cadd(cmul(x0, y1), cmul(x1, y0));
    return Tower(base.re, base.im, lin.re, lin.im);
}

Tower Tower::inv() const {
    if (is_zero()) throw std::domain_error("division by the zero rational function");
    Cx x0{r_[0], r_[1]}, x1{r_[2], r_[3]};
    if (x1.zero()) {
        Cx v = cinv(x0);
        return Tower(v.re, v.im, RatFun(), RatFun());
    }
    Cx n = cmul(x0, x0);
    Cx g = cmul(cmul(x1, x1), Cx{gamma_rf(), RatFun()});
    n = Cx{n.re - g.re, n.im - g.im};
    Cx ni = cinv(n);
    Cx u = cmul(x0, ni), v = cmul(x1, ni);
    return Tower(u.re, u.im, -v.re, -v.im);
}

bool Tower::operator==(const Tower& o) const {
    return r_[0] == o.r_[0] && r_[1] == o.r_[1] && r_[2] == o.r_[2] && r_[3] == o.r_[3];
}

Tower Tower::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Tower r(1), b(*this);
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

static std::string render_gauss(const RatFun& re, const RatFun& im) {
    if (im.is_zero()) return re.str();
    BiPoly d0 = re.den(), d1 = im.den();
    BiPoly g = bp::gcd(d0, d1);
    BiPoly den = bp::divexact(d0, g) * d1;
    BiPoly n0 = re.num() * bp::divexact(den, d0);
    BiPoly n1 = im.num() * bp::divexact(den, d1);
    std::string out;
    bool first = true;
    bp::render_terms(n0, "", out, first);
    bp::render_terms(n1, "i", out, first);
    size_t nterms = n0.terms() + n1.terms();
    if (den.is_one()) return out;
    if (nterms > 1) out = "(" + out + ")";
    std::string d = den.str();
    if (den.terms() > 1) d = "(" + d + ")";
    return out + "/" + d;
}

std::string Tower::str() const {
    std::string base = render_gauss(r_[0], r_[1]);
    if (r_[2].is_zero() && r_[3].is_zero()) return base;
    std::string lin = render_gauss(r_[2], r_[3]);
    if (r_[0].is_zero() && r_[1].is_zero()) return "(" + lin + ")*c";
    return base + " + (" + lin + ")*c";
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Tower parse() {
        Tower v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("tower expression: " + msg + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char ch) {
        skip();
        return pos_ < s_.size() && s_[pos_] == ch;
    }
    bool starts_atom() {
        skip();
        if (pos_ >= s_.size()) return false;
        char ch = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(ch)) || std::isalpha(static_cast<unsigned char>(ch)) ||
               ch == '(';
    }

    Tower expr() {
        Tower v = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                v = v + term();
            } else if (peek('-')) {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    Tower term() {
        Tower v = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                v = v * unary();
            } else if (peek('/')) {
                ++pos_;
                Tower d = unary();
                if (d.is_zero()) fail("division by the zero rational function");
                v = v / d;
            } else if (starts_atom()) {
                v = v * unary();
            } else {
                return v;
            }
        }
    }

    Tower unary() {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    Tower power() {
        Tower base = atom();
        if (peek('^')) {
            ++pos_;
            skip();
            bool negative = false;
            if (peek('-')) {
                negative = true;
                ++pos_;
            }
            skip();
            long e = 0;
            bool any = false;
            if (peek('(')) {
                ++pos_;
                skip();
                if (peek('-')) {
                    negative = !negative;
                    ++pos_;
                }
                e = integer(any);
                if (!peek(')')) fail("expected ')'");
                ++pos_;
            } else {
                e = integer(any);
            }
            if (!any) fail("expected integer exponent");
            if (negative && base.is_zero()) fail("division by the zero rational function");
            return base.pow(negative ? -e : e);
        }
        return base;
    }

    long integer(bool& any) {
        skip();
        long e = 0;
        any = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            e = e * 10 + (s_[pos_++] - '0');
            any = true;
        }
        return e;
    }

    Tower atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            Tower v = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Tower(RatFun(BiPoly(mpz_class(s_.substr(st, pos_ - st)))));
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            size_t st = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string id = s_.substr(st, pos_ - st);
            if (id == "a") return Tower::sym_a();
            if (id == "b") return Tower::sym_b();
            if (id == "c") return Tower::sym_c();
            if (id == "i") return Tower::sym_i();
            if (id == "alpha") return Tower::sym_a() * Tower::sym_a();
            if (id == "beta") return Tower::sym_b() * Tower::sym_b();
            if (id == "gamma") return Tower(Tower::gamma_rf());
            pos_ = st;
            fail("unknown symbol '" + id + "'");
        }
        fail("unexpected character");
    }

    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace

Tower tower_reduce(const std::string& expr) { return Parser(expr).parse(); }

Tower TowerField::random(std::mt19937_64& rng) const {
    auto small_poly = [&rng]() {
        BiPoly f;
        BiPoly a = BiPoly::var_a(), b = BiPoly::var_b();
        BiPoly mono_b(1);
        for (int j = 0; j <= 1; ++j) {
            BiPoly mono(mono_b);
            for (int i = 0; i <= 2; ++i) {
                long v = long(rng() % 7) - 3;
                if (v) f = f + mono * BiPoly(v);
                mono = mono * a;
            }
            mono_b = mono_b * b;
        }
        return f;
    };
    auto rf = [&]() {
        BiPoly n = small_poly();
        BiPoly d = small_poly();
        if (d.is_zero()) d = BiPoly(1);
        return RatFun(n, d);
    };
    RatFun parts[4];
    for (auto& x : parts) x = (rng() % 3 == 0) ? RatFun() : rf();
    return Tower(parts[0], parts[1], parts[2], parts[3]);
}

} // namespace tw
