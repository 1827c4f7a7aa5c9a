#pragma once

#include <zkai/errors.hpp>
#include <zkai/u256.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace zkai {

// Scalar prime field used by every constraint-system component.
//
// p = 21888242871839275222246405745257275088548364400416034343698204186575808495617
//
// Elements are kept in Montgomery form (R = 2^256) so multiplication is a
// single CIOS reduction; add/sub work on the Montgomery representation
// directly. Not constant-time.
class Fp {
public:
    static constexpr U256 MODULUS{0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                                  0xb85045b68181585dULL, 0x30644e72e131a029ULL};
    // R mod p
    static constexpr U256 R{0xac96341c4ffffffbULL, 0x36fc76959f60cd29ULL,
                            0x666ea36f7879462eULL, 0x0e0a77c19a07df2fULL};
    // R^2 mod p
    static constexpr U256 R2{0x1bb8e645ae216da7ULL, 0x53fe3ab1e35c59e3ULL,
                             0x8c49833d53bb8085ULL, 0x0216d0b17f4e44a5ULL};
    // -p^{-1} mod 2^64
    static constexpr uint64_t NEG_INV = 0xc2e1f593efffffffULL;

    constexpr Fp() : mont_{} {}
    explicit Fp(uint64_t v) { *this = from_u256(U256(v)); }

    static Fp zero() { return Fp(); }
    static Fp one() { Fp r; r.mont_ = R; return r; }

    // Reduces v mod p and converts into Montgomery form.
    static Fp from_u256(const U256& v);
    // Canonical (non-Montgomery) value in [0, p).
    U256 to_u256() const;

    // Fixed-width 64-char big-endian hex of the canonical value.
    std::string to_hex() const;
    static Fp from_hex(std::string_view hex);  // MalformedEncoding on bad input

    // Interprets 32 bytes (little-endian) as an integer, reduced mod p.
    static Fp from_bytes_reduce(const uint8_t bytes[32]);

    bool is_zero() const { return mont_.is_zero(); }

    Fp operator+(const Fp& o) const {
        Fp r;
        r.mont_ = u256_add(mont_, o.mont_);
        if (r.mont_ >= MODULUS) r.mont_ = u256_sub(r.mont_, MODULUS);
        return r;
    }
    Fp operator-(const Fp& o) const {
        Fp r;
        r.mont_ = (mont_ >= o.mont_) ? u256_sub(mont_, o.mont_)
                                     : u256_sub(u256_add(mont_, MODULUS), o.mont_);
        return r;
    }
    Fp operator-() const { return Fp::zero() - *this; }
    Fp operator*(const Fp& o) const {
        uint64_t t[8];
        u256_mul_wide(mont_, o.mont_, t);
        Fp r;
        r.mont_ = mont_reduce(t);
        return r;
    }

    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    bool operator==(const Fp& o) const { return mont_ == o.mont_; }
    bool operator!=(const Fp& o) const { return mont_ != o.mont_; }

    Fp square() const { return *this * *this; }
    Fp pow(const U256& exp) const;

    // Multiplicative inverse via Fermat. Throws DivisionByZero on zero.
    Fp inv() const;

    // 2^k as a field element (k < 256).
    static Fp two_pow(unsigned k);

    // Raw Montgomery limbs; used only by serialization-free equality/hashing.
    const U256& mont() const { return mont_; }

private:
    U256 mont_;

    static U256 mont_reduce(uint64_t t[8]);
};

enum class FpOp { add, sub, mul, inv, neg };

// Dispatch wrapper matching the toolkit's scripted operation surface.
Fp fp_ops(const Fp& a, const Fp& b, FpOp op);

std::ostream& operator<<(std::ostream& os, const Fp& v);

}  // namespace zkai
