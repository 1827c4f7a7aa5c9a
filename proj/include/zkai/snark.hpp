#pragma once

#include <zkai/circuit.hpp>
#include <zkai/exec.hpp>
#include <zkai/group.hpp>
#include <zkai/hash.hpp>
#include <zkai/qap.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace zkai::snark {

struct ContributionRecord {
    Digest digest{};
};

// Running powers-of-tau transcript: powers[k] = g^{s^k} for the secret s
// accumulated so far. A fresh accumulator starts at s = 1 (all powers are
// the generator); each contribution folds in one participant's secret.
struct PotAccumulator {
    EngineKind engine = EngineKind::reference;
    std::vector<GroupElement> powers;
    std::vector<ContributionRecord> contributions;

    size_t max_degree() const { return powers.size() - 1; }
};

PotAccumulator fresh_accumulator(size_t max_degree,
                                 EngineKind engine = EngineKind::reference);

// Consistency check on the power chain: powers[0] is the generator and
// every adjacent pair satisfies e(p[k], p[1]) = e(p[k+1], p[0]).
// Throws InvalidAccumulator on any violation.
void validate_accumulator(const PotAccumulator& acc);

// Deterministic map from contributor entropy to their secret factor.
Fp contribution_secret(const std::array<uint8_t, 32>& entropy);

// One ceremony step: validates the incoming accumulator, folds in the
// participant secret derived from `entropy`, appends a contribution
// digest. After contributions s_1..s_k the accumulated secret is their
// product.
PotAccumulator ceremony_contribute(const PotAccumulator& acc,
                                   const std::array<uint8_t, 32>& entropy);

// The toxic-waste secret. Only test/simulator setups retain it; the
// production path never materializes the product of contributions.
struct Trapdoor {
    Fp secret;
    std::vector<ContributionRecord> contributions;
};

struct VerificationKey {
    EngineKind engine = EngineKind::reference;
    uint32_t num_instance = 0;
    uint32_t domain_size = 0;
    GroupElement generator;
    GroupElement t_at_s;  // g^{t(s)}
    std::vector<GroupElement> v_inst, w_inst, y_inst;  // instance wires

    bool operator==(const VerificationKey& o) const = default;
};

struct ProvingKey {
    EngineKind engine = EngineKind::reference;
    uint32_t num_instance = 0;
    uint32_t num_witness = 0;
    std::vector<GroupElement> powers;                // g^{s^k}, k <= 2m
    std::vector<GroupElement> v_enc, w_enc, y_enc;   // all wires
    GroupElement t_at_s;

    bool operator==(const ProvingKey& o) const = default;
};

struct CommonReferenceString {
    ProvingKey pk;
    VerificationKey vk;
    std::optional<Trapdoor> trapdoor;  // present only when setup keeps it
};

// Evaluates every QAP polynomial in the exponent from the accumulated
// powers, producing the circuit-specific keys. Deterministic given the
// accumulator and QAP. Throws DegreeOverflow when the accumulator holds
// fewer than 2m+1 powers.
CommonReferenceString phase2_specialize(const PotAccumulator& acc,
                                        const qap::QapInstance& qap,
                                        ExecPolicy policy = ExecPolicy::parallel);

// Ceremony convenience wrapper: fresh accumulator of the given degree,
// `k` contributions with entropy drawn from the seeded stream, optional
// trapdoor retention for test/simulator use.
struct CeremonyResult {
    PotAccumulator accumulator;
    std::optional<Trapdoor> trapdoor;
};
CeremonyResult run_ceremony(size_t max_degree, size_t contributions,
                            uint64_t seed, bool keep_trapdoor);

// pi = (A, B, C, H). A/B carry the witness-wire combinations plus
// t(s)-multiple blinding; H commits to the quotient h = p/t adjusted for
// the blinding; C carries the witness-wire y-combination. Serialized size
// is independent of circuit size.
struct SnarkProof {
    EngineKind engine = EngineKind::reference;
    GroupElement a, b, c, h;

    bool operator==(const SnarkProof& o) const = default;
};

// Produces a proof for a satisfying witness; refuses unsatisfying input
// with UnsatisfiedWitness. Deterministic given the seed (which drives the
// blinding scalars).
SnarkProof prove(const CommonReferenceString& crs, const qap::QapInstance& qap,
                 const circuit::Witness& witness, uint64_t seed,
                 ExecPolicy policy = ExecPolicy::parallel);

namespace detail {
// Same construction without the satisfaction check; the quotient is the
// floor division result. Exists so fault-injection harnesses can build
// proofs from corrupted witnesses.
SnarkProof prove_unchecked(const CommonReferenceString& crs,
                           const qap::QapInstance& qap,
                           const circuit::Witness& witness, uint64_t seed,
                           ExecPolicy policy = ExecPolicy::parallel);
}  // namespace detail

// Pairing check e(A_full, B_full) = e(C_full, g) * e(g^{t(s)}, H) with the
// instance-wire contributions recomputed from the key and public inputs.
// Pure; throws MalformedProof on engine mismatch and DimensionError on a
// public-input count mismatch.
bool verify(const VerificationKey& vk, const std::vector<Fp>& public_inputs,
            const SnarkProof& proof);

// Trapdoor simulator: accepting proof for the statement without any
// witness. Throws TrapdoorUnavailable when the CRS kept no trapdoor.
SnarkProof simulate_proof(const CommonReferenceString& crs,
                          const std::vector<Fp>& public_inputs, uint64_t seed);

// Byte formats. Proof: magic "ZKAI1", version, engine tag, fixed-width hex
// fields for A, B, C, H. VK: magic "ZKVK1", version, engine tag, domain
// size, instance count (little-endian u32), then fixed-width hex entries.
std::vector<uint8_t> serialize_proof(const SnarkProof& proof);
SnarkProof deserialize_proof(std::span<const uint8_t> bytes);
std::vector<uint8_t> serialize_vk(const VerificationKey& vk);
VerificationKey deserialize_vk(std::span<const uint8_t> bytes);

// Proving-key file format (tooling convenience, magic "ZKPK1").
std::vector<uint8_t> serialize_pk(const ProvingKey& pk);
ProvingKey deserialize_pk(std::span<const uint8_t> bytes);

}  // namespace zkai::snark
