#include "twist/params.hpp"

#include <random>

namespace tw {

Params<Tower> symbolic_params() {
    Params<Tower> P;
    P.a = Tower::sym_a();
    P.b = Tower::sym_b();
    P.c = Tower::sym_c();
    P.i = Tower::sym_i();
    P.alpha = P.a * P.a;
    P.beta = P.b * P.b;
    P.gamma = Tower(Tower::gamma_rf());
    return P;
}

static bool excluded(const Fp2& x) {
    Fp2 one{1, 0, x.k};
    return x.is_zero() || x == one || x == -one;
}

Specialization specialize_params(uint32_t p, uint64_t seed, bool split) {
    if (p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    FpField F(p);
    Specialization out{F, {}, p, seed, 0, split};
    if (split && p % 4 != 1) throw ExhaustedError("no split tuple: -1 is not a square mod " + std::to_string(p));
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + p);
    const Fp2 one = F.one();
    Fp2 i;
    (-one).sqrt(i);
    const uint64_t budget = 40ULL * p * p + 1000;
    for (uint64_t t = 1; t <= budget; ++t) {
        Fp2 alpha = F.random_base(rng), beta = F.random_base(rng);
        if (excluded(alpha) || excluded(beta)) continue;
        Fp2 den = one + alpha * beta;
        if (den.is_zero()) continue;
        Fp2 gamma = -(alpha + beta) / den;
        if (excluded(gamma)) continue;
        Fp2 a, b, c;
        alpha.sqrt(a);
        beta.sqrt(b);
        if (!gamma.sqrt(c)) continue;
        if (split && !(a.in_base() && b.in_base() && c.in_base())) continue;
        out.par = Params<Fp2>{a, b, c, i, alpha, beta, gamma};
        out.attempts = t;
        return out;
    }
    throw ExhaustedError("no admissible parameter tuple found for p = " + std::to_string(p));
}

} // namespace tw
