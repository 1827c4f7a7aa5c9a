#include <zkai/group.hpp>

namespace zkai {

namespace {
void require_same_engine(EngineKind a, EngineKind b, const char* what) {
    if (a != b) throw EngineMismatch(std::string(what) + ": engine mismatch");
}
}  // namespace

GroupElement group_add(const GroupElement& a, const GroupElement& b) {
    require_same_engine(a.engine, b.engine, "group_add");
    return {a.engine, a.exponent + b.exponent};
}

GroupElement group_neg(const GroupElement& a) {
    return {a.engine, -a.exponent};
}

GroupElement group_sub(const GroupElement& a, const GroupElement& b) {
    require_same_engine(a.engine, b.engine, "group_sub");
    return {a.engine, a.exponent - b.exponent};
}

GroupElement group_exp(const GroupElement& base, const Fp& k) {
    return {base.engine, base.exponent * k};
}

PairingOutput pairing(const GroupElement& a, const GroupElement& b) {
    require_same_engine(a.engine, b.engine, "pairing");
    return {a.engine, a.exponent * b.exponent};
}

PairingOutput pairing_mul(const PairingOutput& a, const PairingOutput& b) {
    require_same_engine(a.engine, b.engine, "pairing_mul");
    return {a.engine, a.exponent + b.exponent};
}

Fp reference_exponent(const GroupElement& a) {
    if (a.engine != EngineKind::reference)
        throw EngineMismatch("reference_exponent: not a reference-engine element");
    return a.exponent;
}

}  // namespace zkai
