#pragma once

#include <cstdint>
#include <cstring>

namespace zkai {

// 256-bit unsigned integer, 4 x 64-bit limbs, little-endian limb order.
struct U256 {
    uint64_t limbs[4];

    constexpr U256() : limbs{0, 0, 0, 0} {}
    constexpr explicit U256(uint64_t v) : limbs{v, 0, 0, 0} {}
    constexpr U256(uint64_t l0, uint64_t l1, uint64_t l2, uint64_t l3)
        : limbs{l0, l1, l2, l3} {}

    constexpr bool is_zero() const {
        return (limbs[0] | limbs[1] | limbs[2] | limbs[3]) == 0;
    }

    constexpr bool operator==(const U256& o) const {
        return limbs[0] == o.limbs[0] && limbs[1] == o.limbs[1] &&
               limbs[2] == o.limbs[2] && limbs[3] == o.limbs[3];
    }
    constexpr bool operator!=(const U256& o) const { return !(*this == o); }

    constexpr bool operator>=(const U256& o) const {
        for (int i = 3; i >= 0; i--) {
            if (limbs[i] > o.limbs[i]) return true;
            if (limbs[i] < o.limbs[i]) return false;
        }
        return true;  // equal
    }
    constexpr bool operator<(const U256& o) const { return !(*this >= o); }

    constexpr bool bit(int i) const {
        return (limbs[i / 64] >> (i % 64)) & 1;
    }

    // Index of the highest set bit, or -1 for zero.
    constexpr int top_bit() const {
        for (int i = 255; i >= 0; i--)
            if (bit(i)) return i;
        return -1;
    }
};

inline U256 u256_add(const U256& a, const U256& b) {
    U256 r;
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; i++) {
        carry += (unsigned __int128)a.limbs[i] + b.limbs[i];
        r.limbs[i] = (uint64_t)carry;
        carry >>= 64;
    }
    return r;
}

inline U256 u256_sub(const U256& a, const U256& b) {
    U256 r;
    unsigned __int128 borrow = 0;
    for (int i = 0; i < 4; i++) {
        unsigned __int128 d = (unsigned __int128)a.limbs[i] - b.limbs[i] - borrow;
        r.limbs[i] = (uint64_t)d;
        borrow = (d >> 64) ? 1 : 0;
    }
    return r;
}

// Widening multiply: a * b -> 512-bit result in 8 limbs.
inline void u256_mul_wide(const U256& a, const U256& b, uint64_t out[8]) {
    std::memset(out, 0, 8 * sizeof(uint64_t));
    for (int i = 0; i < 4; i++) {
        uint64_t carry = 0;
        for (int j = 0; j < 4; j++) {
            unsigned __int128 acc =
                (unsigned __int128)a.limbs[i] * b.limbs[j] + out[i + j] + carry;
            out[i + j] = (uint64_t)acc;
            carry = (uint64_t)(acc >> 64);
        }
        out[i + 4] = carry;
    }
}

}  // namespace zkai
