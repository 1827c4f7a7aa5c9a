#include <zkai/rng.hpp>

namespace zkai {

Fp random_fp(std::mt19937_64& rng) {
    for (;;) {
        U256 v(rng(), rng(), rng(), rng());
        v.limbs[3] &= (1ULL << 62) - 1;  // trim to 254 bits before the compare
        if (v < Fp::MODULUS) return Fp::from_u256(v);
    }
}

Fp random_nonzero_fp(std::mt19937_64& rng) {
    for (;;) {
        Fp v = random_fp(rng);
        if (!v.is_zero()) return v;
    }
}

uint64_t random_below(std::mt19937_64& rng, uint64_t n) {
    if (n == 0) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        uint64_t x = rng();
        if (x < limit) return x % n;
    }
}

}  // namespace zkai
