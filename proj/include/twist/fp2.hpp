#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace tw {

// F_{p^2} = F_p[s]/(s^2 - nr) with nr the smallest quadratic non-residue.
class Fp2Ctx {
public:
    explicit Fp2Ctx(uint32_t p);

    uint32_t p;
    uint32_t nr;
    uint32_t q;
    std::vector<uint32_t> inv_p;   // inverses in F_p
    std::vector<uint32_t> exp_tab; // exp_tab[k] = g^k packed as a + p*b
    std::vector<int32_t> log_tab;  // log_tab[a + p*b], -1 at zero
};

struct Fp2 {
    uint32_t a = 0, b = 0;
    const Fp2Ctx* k = nullptr;

    Fp2() = default;
    Fp2(uint32_t a_, uint32_t b_, const Fp2Ctx* k_) : a(a_), b(b_), k(k_) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_one() const { return a == 1 && b == 0; }
    bool in_base() const { return b == 0; }
    uint32_t packed() const { return a + k->p * b; }

    Fp2 operator+(const Fp2& o) const {
        uint32_t x = a + o.a, y = b + o.b;
        if (x >= k->p) x -= k->p;
        if (y >= k->p) y -= k->p;
        return {x, y, k};
    }
    Fp2 operator-(const Fp2& o) const {
        uint32_t x = a + k->p - o.a, y = b + k->p - o.b;
        if (x >= k->p) x -= k->p;
        if (y >= k->p) y -= k->p;
        return {x, y, k};
    }
    Fp2 operator-() const { return {a ? k->p - a : 0, b ? k->p - b : 0, k}; }
    Fp2 operator*(const Fp2& o) const {
        const uint64_t p = k->p;
        if (b == 0 && o.b == 0) return {uint32_t(uint64_t(a) * o.a % p), 0, k};
        uint64_t x = (uint64_t(a) * o.a + uint64_t(b) * o.b % p * k->nr) % p;
        uint64_t y = (uint64_t(a) * o.b + uint64_t(b) * o.a) % p;
        return {uint32_t(x), uint32_t(y), k};
    }
    Fp2 inv() const;
    Fp2 operator/(const Fp2& o) const { return *this * o.inv(); }
    Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
    Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
    Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
    Fp2& operator/=(const Fp2& o) { return *this = *this / o; }
    bool operator==(const Fp2& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Fp2& o) const { return !(*this == o); }
    bool operator<(const Fp2& o) const { return a != o.a ? a < o.a : b < o.b; }

    Fp2 pow(uint64_t e) const;
    Fp2 conj() const { return {a, b ? k->p - b : 0, k}; }
    bool is_square() const;
    // one square root (the canonically smaller one); false if none
    bool sqrt(Fp2& out) const;

    std::string str() const;
};

inline size_t cost(const Fp2&) { return 1; }

class FpField {
public:
    using Elem = Fp2;
    static constexpr bool finite = true;

    explicit FpField(uint32_t p) : ctx_(std::make_shared<Fp2Ctx>(p)) {}
    explicit FpField(std::shared_ptr<const Fp2Ctx> c) : ctx_(std::move(c)) {}

    uint32_t p() const { return ctx_->p; }
    uint32_t nr() const { return ctx_->nr; }
    const Fp2Ctx* ctx() const { return ctx_.get(); }

    Fp2 zero() const { return {0, 0, ctx_.get()}; }
    Fp2 one() const { return {1, 0, ctx_.get()}; }
    Fp2 from_int(long long v) const;
    Fp2 make(uint32_t a, uint32_t b) const { return {a % ctx_->p, b % ctx_->p, ctx_.get()}; }
    Fp2 s() const { return {0, 1, ctx_.get()}; }
    Fp2 random(std::mt19937_64& rng) const;
    Fp2 random_base(std::mt19937_64& rng) const;
    // unpacks a + p*b
    Fp2 unpack(uint32_t v) const { return {v % ctx_->p, v / ctx_->p, ctx_.get()}; }
    uint32_t size() const { return ctx_->q; }

private:
    std::shared_ptr<const Fp2Ctx> ctx_;
};

bool is_prime(uint64_t n);

} // namespace tw
