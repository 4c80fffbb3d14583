#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "twist/fp2.hpp"
#include "twist/tower.hpp"

namespace tw {

template <class E>
struct Params {
    E a, b, c, i, alpha, beta, gamma;

    // alpha_1, alpha_2, alpha_3 = alpha, beta, gamma
    const E& al(int j) const { return j == 1 ? alpha : (j == 2 ? beta : gamma); }
    // square roots a_1, a_2, a_3 = a, b, c
    const E& rt(int j) const { return j == 1 ? a : (j == 2 ? b : c); }
};

Params<Tower> symbolic_params();

struct Specialization {
    FpField field;
    Params<Fp2> par;
    uint32_t p = 0;
    uint64_t seed = 0;
    uint64_t attempts = 0;
    bool split = false;
};

struct ExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic in (p, seed). With split = true the tuple is required to
// have a, b, c, i in F_p itself.
Specialization specialize_params(uint32_t p, uint64_t seed, bool split);

template <class E>
E constraint_value(const Params<E>& P) {
    return P.alpha + P.beta + P.gamma + P.alpha * P.beta * P.gamma;
}

} // namespace tw
