#pragma once

#include <random>
#include <string>

#include "twist/poly2.hpp"

namespace tw {

// Element of Q(a,b)(i)(c) with i^2 = -1 and c^2 = -(a^2+b^2)/(1+a^2 b^2),
// stored on the basis 1, i, c, ic.
class Tower {
public:
    Tower() = default;
    explicit Tower(long v) { r_[0] = RatFun(v); }
    explicit Tower(const RatFun& x) { r_[0] = x; }
    Tower(const RatFun& x0, const RatFun& x1, const RatFun& x2, const RatFun& x3) : r_{x0, x1, x2, x3} {}

    static const RatFun& gamma_rf();
    static Tower sym_a();
    static Tower sym_b();
    static Tower sym_c();
    static Tower sym_i();

    const RatFun& part(int k) const { return r_[k]; }
    bool is_zero() const;
    bool is_one() const;
    size_t cost() const;

    Tower operator+(const Tower& o) const;
    Tower operator-(const Tower& o) const;
    Tower operator-() const;
    Tower operator*(const Tower& o) const;
    Tower operator/(const Tower& o) const { return *this * o.inv(); }
    Tower inv() const;
    Tower& operator+=(const Tower& o) { return *this = *this + o; }
    Tower& operator-=(const Tower& o) { return *this = *this - o; }
    Tower& operator*=(const Tower& o) { return *this = *this * o; }
    Tower& operator/=(const Tower& o) { return *this = *this / o; }
    bool operator==(const Tower& o) const;
    bool operator!=(const Tower& o) const { return !(*this == o); }
    Tower pow(long e) const;

    // "num/den + (num/den)*c" with numerators over Z[a,b,i]
    std::string str() const;

private:
    RatFun r_[4];
};

inline size_t cost(const Tower& x) { return x.cost(); }

// Parses and reduces an expression in a, b, c, i, alpha, beta, gamma.
Tower tower_reduce(const std::string& expr);

class TowerField {
public:
    using Elem = Tower;
    static constexpr bool finite = false;

    Tower zero() const { return Tower(); }
    Tower one() const { return Tower(1); }
    Tower from_int(long long v) const { return Tower(long(v)); }
    Tower random(std::mt19937_64& rng) const;
};

} // namespace tw
