#pragma once

#include <zkai/field.hpp>

#include <cstdint>

namespace zkai {

// Group backend. The reference engine tracks exponents directly: g^k is
// stored as k mod p, the group operation is exponent addition, and the
// pairing multiplies exponents into the target group. Discrete log is
// trivial by construction, which is the point: every verification equation
// becomes exactly decidable in tests. A hardened engine over a pairing
// curve can slot in behind the same tag without touching callers.
enum class EngineKind : uint8_t {
    reference = 1,
};

struct GroupElement {
    EngineKind engine = EngineKind::reference;
    Fp exponent;  // reference engine: k where the element is g^k

    static GroupElement identity(EngineKind e = EngineKind::reference) {
        return {e, Fp::zero()};
    }
    static GroupElement generator(EngineKind e = EngineKind::reference) {
        return {e, Fp::one()};
    }

    bool operator==(const GroupElement& o) const {
        return engine == o.engine && exponent == o.exponent;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
};

struct PairingOutput {
    EngineKind engine = EngineKind::reference;
    Fp exponent;  // target-group exponent

    static PairingOutput identity(EngineKind e = EngineKind::reference) {
        return {e, Fp::zero()};
    }

    bool operator==(const PairingOutput& o) const {
        return engine == o.engine && exponent == o.exponent;
    }
    bool operator!=(const PairingOutput& o) const { return !(*this == o); }
};

// Group operation (additive in the exponent). Throws EngineMismatch when
// the operands come from different engines.
GroupElement group_add(const GroupElement& a, const GroupElement& b);
GroupElement group_neg(const GroupElement& a);
GroupElement group_sub(const GroupElement& a, const GroupElement& b);

// base^k: reference engine multiplies the tracked exponent by k.
GroupElement group_exp(const GroupElement& base, const Fp& k);

// Bilinear map; exactly multiplicative in the exponents.
PairingOutput pairing(const GroupElement& a, const GroupElement& b);
PairingOutput pairing_mul(const PairingOutput& a, const PairingOutput& b);

// Reference-engine escape hatch: reads the tracked exponent. Only the
// trapdoor simulator and tests may use it; protocol code sticks to the
// group operations above so it stays engine-generic.
Fp reference_exponent(const GroupElement& a);

}  // namespace zkai
