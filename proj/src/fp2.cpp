#include "twist/fp2.hpp"

#include <stdexcept>

namespace tw {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

static uint64_t powmod(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

static std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> f;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) f.push_back(n);
    return f;
}

Fp2Ctx::Fp2Ctx(uint32_t p_) : p(p_) {
    if (p < 3 || p > 2047 || !is_prime(p))
        throw std::invalid_argument("field characteristic must be an odd prime below 2048");
    q = p * p;
    nr = 0;
    for (uint32_t x = 2; x < p; ++x) {
        if (powmod(x, (p - 1) / 2, p) == p - 1) {
            nr = x;
            break;
        }
    }
    inv_p.assign(p, 0);
    for (uint32_t x = 1; x < p; ++x) inv_p[x] = uint32_t(powmod(x, p - 2, p));

    auto mul = [&](uint32_t u, uint32_t v) {
        uint64_t a1 = u % p, b1 = u / p, a2 = v % p, b2 = v / p;
        uint64_t x = (a1 * a2 + b1 * b2 % p * nr) % p;
        uint64_t y = (a1 * b2 + a2 * b1) % p;
        return uint32_t(x + p * y);
    };
    auto powe = [&](uint32_t g, uint64_t e) {
        uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, g);
            g = mul(g, g);
            e >>= 1;
        }
        return r;
    };
    const uint64_t order = uint64_t(q) - 1;
    auto fac = prime_factors(order);
    uint32_t gen = 0;
    for (uint32_t cand = p; cand < q; ++cand) {
        bool ok = true;
        for (auto l : fac)
            if (powe(cand, order / l) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            gen = cand;
            break;
        }
    }
    exp_tab.assign(order, 0);
    log_tab.assign(q, -1);
    uint32_t cur = 1;
    for (uint64_t e = 0; e < order; ++e) {
        exp_tab[e] = cur;
        log_tab[cur] = int32_t(e);
        cur = mul(cur, gen);
    }
}

Fp2 Fp2::inv() const {
    if (is_zero()) throw std::domain_error("division by zero in F_p^2");
    const uint64_t p = k->p;
    if (b == 0) return {k->inv_p[a], 0, k};
    // (a - b s) / (a^2 - nr b^2)
    uint64_t n = (uint64_t(a) * a % p + p * p - uint64_t(b) * b % p * k->nr % p) % p;
    uint64_t ni = k->inv_p[n];
    return {uint32_t(a * ni % p), uint32_t((p - b) * ni % p), k};
}

Fp2 Fp2::pow(uint64_t e) const {
    if (is_zero()) return e == 0 ? Fp2{1, 0, k} : *this;
    const uint64_t ord = uint64_t(k->q) - 1;
    uint64_t l = uint64_t(k->log_tab[packed()]);
    uint64_t r = (l * (e % ord)) % ord;
    uint32_t v = k->exp_tab[r];
    return {v % k->p, v / k->p, k};
}

bool Fp2::is_square() const {
    if (is_zero()) return true;
    return (k->log_tab[packed()] & 1) == 0;
}

bool Fp2::sqrt(Fp2& out) const {
    if (is_zero()) {
        out = *this;
        return true;
    }
    int32_t l = k->log_tab[packed()];
    if (l & 1) return false;
    uint32_t v = k->exp_tab[uint32_t(l) / 2];
    Fp2 r{v % k->p, v / k->p, k};
    Fp2 m = -r;
    out = (m < r) ? m : r;
    return true;
}

std::string Fp2::str() const {
    if (b == 0) return std::to_string(a);
    if (a == 0) return std::to_string(b) + "*s";
    return std::to_string(a) + "+" + std::to_string(b) + "*s";
}

Fp2 FpField::from_int(long long v) const {
    long long p = ctx_->p;
    long long r = v % p;
    if (r < 0) r += p;
    return {uint32_t(r), 0, ctx_.get()};
}

Fp2 FpField::random(std::mt19937_64& rng) const {
    uint32_t v = uint32_t(rng() % ctx_->q);
    return unpack(v);
}

Fp2 FpField::random_base(std::mt19937_64& rng) const {
    return {uint32_t(rng() % ctx_->p), 0, ctx_.get()};
}

} // namespace tw
