#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tw {

// Dense polynomial in a over Z; index = degree, no trailing zeros.
using UPoly = std::vector<mpz_class>;

namespace up {
void trim(UPoly& f);
UPoly add(const UPoly& f, const UPoly& g);
UPoly sub(const UPoly& f, const UPoly& g);
UPoly mul(const UPoly& f, const UPoly& g);
UPoly neg(const UPoly& f);
UPoly scale(const UPoly& f, const mpz_class& s);
mpz_class content(const UPoly& f);
UPoly divexact(const UPoly& f, const UPoly& g);
bool divides(const UPoly& g, const UPoly& f, UPoly* quo = nullptr);
UPoly gcd(const UPoly& f, const UPoly& g);
int sign_lc(const UPoly& f);
} // namespace up

// Dense polynomial in b whose coefficients are UPoly in a.
struct BiPoly {
    std::vector<UPoly> c;

    BiPoly() = default;
    explicit BiPoly(long v);
    explicit BiPoly(const mpz_class& v);
    static BiPoly var_a();
    static BiPoly var_b();

    bool is_zero() const { return c.empty(); }
    bool is_const() const { return c.size() <= 1 && (c.empty() || c[0].size() <= 1); }
    bool is_one() const;
    int deg_b() const { return int(c.size()) - 1; }
    int deg_a() const;
    const UPoly& lc() const { return c.back(); }
    size_t terms() const;
    size_t cost() const;
    void trim();
    int sign() const;

    bool operator==(const BiPoly& o) const { return c == o.c; }
    bool operator!=(const BiPoly& o) const { return c != o.c; }
    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator-() const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly scale(const UPoly& s) const;
    BiPoly divexact_u(const UPoly& s) const;

    // terms rendered in a, b; optional suffix per term (used for the i-part)
    std::string str() const;
};

namespace bp {
UPoly content(const BiPoly& f);
BiPoly divexact(const BiPoly& f, const BiPoly& g);
BiPoly gcd(const BiPoly& f, const BiPoly& g);
void render_terms(const BiPoly& f, const std::string& suffix, std::string& out, bool& first);
} // namespace bp

// Reduced fraction of BiPoly, denominator with positive leading coefficient.
class RatFun {
public:
    RatFun() : num_(), den_(1) {}
    explicit RatFun(long v) : num_(v), den_(1) {}
    explicit RatFun(const BiPoly& n) : num_(n), den_(1) {}
    RatFun(const BiPoly& n, const BiPoly& d);

    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    size_t cost() const { return num_.cost() + den_.cost(); }

    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator-() const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    RatFun inv() const;
    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    std::string str() const;

private:
    static RatFun raw(BiPoly n, BiPoly d);
    BiPoly num_, den_;
};

} // namespace tw
