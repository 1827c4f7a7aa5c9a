#include <zkai/field.hpp>

#include <cctype>
#include <ostream>

namespace zkai {

U256 Fp::mont_reduce(uint64_t t[8]) {
    for (int i = 0; i < 4; i++) {
        uint64_t m = t[i] * NEG_INV;
        uint64_t carry = 0;
        for (int j = 0; j < 4; j++) {
            unsigned __int128 acc =
                (unsigned __int128)m * MODULUS.limbs[j] + t[i + j] + carry;
            t[i + j] = (uint64_t)acc;
            carry = (uint64_t)(acc >> 64);
        }
        for (int j = i + 4; j < 8 && carry; j++) {
            unsigned __int128 acc = (unsigned __int128)t[j] + carry;
            t[j] = (uint64_t)acc;
            carry = (uint64_t)(acc >> 64);
        }
    }
    U256 r(t[4], t[5], t[6], t[7]);
    if (r >= MODULUS) r = u256_sub(r, MODULUS);
    return r;
}

Fp Fp::from_u256(const U256& v) {
    U256 reduced = v;
    while (reduced >= MODULUS) reduced = u256_sub(reduced, MODULUS);
    // to Montgomery form: v * R2 * R^-1 = v * R
    uint64_t t[8];
    u256_mul_wide(reduced, R2, t);
    Fp r;
    r.mont_ = mont_reduce(t);
    return r;
}

U256 Fp::to_u256() const {
    uint64_t t[8] = {mont_.limbs[0], mont_.limbs[1], mont_.limbs[2], mont_.limbs[3],
                     0, 0, 0, 0};
    return mont_reduce(t);
}

Fp Fp::pow(const U256& exp) const {
    Fp result = Fp::one();
    Fp base = *this;
    int top = exp.top_bit();
    for (int i = 0; i <= top; i++) {
        if (exp.bit(i)) result *= base;
        base = base.square();
    }
    return result;
}

Fp Fp::inv() const {
    if (is_zero()) throw DivisionByZero("field inversion of zero");
    static const U256 P_MINUS_2 = u256_sub(MODULUS, U256(2));
    return pow(P_MINUS_2);
}

Fp Fp::two_pow(unsigned k) {
    U256 v;
    v.limbs[k / 64] = 1ULL << (k % 64);
    return from_u256(v);
}

std::string Fp::to_hex() const {
    static const char* digits = "0123456789abcdef";
    U256 v = to_u256();
    std::string out(64, '0');
    for (int limb = 0; limb < 4; limb++) {
        uint64_t x = v.limbs[limb];
        for (int nib = 0; nib < 16; nib++) {
            out[63 - (limb * 16 + nib)] = digits[(x >> (4 * nib)) & 0xf];
        }
    }
    return out;
}

Fp Fp::from_hex(std::string_view hex) {
    if (hex.size() != 64)
        throw MalformedEncoding("field element hex must be 64 chars, got " +
                                std::to_string(hex.size()));
    U256 v;
    for (size_t i = 0; i < 64; i++) {
        char c = hex[i];
        uint64_t nibble;
        // canonical form only: lowercase, so no two encodings of one value
        if (c >= '0' && c <= '9') nibble = uint64_t(c - '0');
        else if (c >= 'a' && c <= 'f') nibble = uint64_t(c - 'a' + 10);
        else throw MalformedEncoding("invalid hex digit in field element");
        size_t pos = 63 - i;  // big-endian text, little-endian limbs
        v.limbs[pos / 16] |= nibble << (4 * (pos % 16));
    }
    if (v >= MODULUS) throw MalformedEncoding("field element out of range");
    return from_u256(v);
}

Fp Fp::from_bytes_reduce(const uint8_t bytes[32]) {
    U256 v;
    for (int i = 0; i < 32; i++) {
        v.limbs[i / 8] |= (uint64_t)bytes[i] << (8 * (i % 8));
    }
    return from_u256(v);
}

Fp fp_ops(const Fp& a, const Fp& b, FpOp op) {
    switch (op) {
        case FpOp::add: return a + b;
        case FpOp::sub: return a - b;
        case FpOp::mul: return a * b;
        case FpOp::inv: return a.inv();
        case FpOp::neg: return -a;
    }
    throw Error("unknown field op");
}

std::ostream& operator<<(std::ostream& os, const Fp& v) {
    return os << v.to_hex();
}

}  // namespace zkai
