#include <zkai/snark.hpp>

#include <zkai/rng.hpp>

#include <cstring>

namespace zkai::snark {

PotAccumulator fresh_accumulator(size_t max_degree, EngineKind engine) {
    PotAccumulator acc;
    acc.engine = engine;
    // accumulated secret starts at 1: every power is the generator
    acc.powers.assign(max_degree + 1, GroupElement::generator(engine));
    return acc;
}

void validate_accumulator(const PotAccumulator& acc) {
    if (acc.powers.empty())
        throw InvalidAccumulator("accumulator has no powers");
    if (acc.powers[0] != GroupElement::generator(acc.engine))
        throw InvalidAccumulator("accumulator power 0 is not the generator");
    for (size_t k = 0; k + 1 < acc.powers.size(); k++) {
        if (acc.powers[k].engine != acc.engine ||
            acc.powers[k + 1].engine != acc.engine)
            throw InvalidAccumulator("accumulator mixes engines");
        // e(g^{s^k}, g^s) must equal e(g^{s^{k+1}}, g)
        if (pairing(acc.powers[k], acc.powers[1]) !=
            pairing(acc.powers[k + 1], acc.powers[0]))
            throw InvalidAccumulator("power chain inconsistent at index " +
                                     std::to_string(k + 1));
    }
}

Fp contribution_secret(const std::array<uint8_t, 32>& entropy) {
    // Hash-to-field with rejection of zero (a zero factor would collapse
    // the whole transcript).
    std::array<uint8_t, 32> cur = entropy;
    for (;;) {
        Digest d = sha256(std::span<const uint8_t>(cur));
        Fp s = Fp::from_bytes_reduce(d.data());
        if (!s.is_zero()) return s;
        cur = d;
    }
}

PotAccumulator ceremony_contribute(const PotAccumulator& acc,
                                   const std::array<uint8_t, 32>& entropy) {
    validate_accumulator(acc);
    const Fp s_j = contribution_secret(entropy);

    PotAccumulator out;
    out.engine = acc.engine;
    out.powers.resize(acc.powers.size());
    Fp s_pow = Fp::one();
    for (size_t k = 0; k < acc.powers.size(); k++) {
        out.powers[k] = group_exp(acc.powers[k], s_pow);  // g^{(s*s_j)^k}
        s_pow *= s_j;
    }

    out.contributions = acc.contributions;
    HashWriter w;
    if (!out.contributions.empty())
        w.bytes(std::span<const uint8_t>(out.contributions.back().digest));
    w.str(group_exp(GroupElement::generator(acc.engine), s_j).exponent.to_hex());
    w.str(out.powers[1].exponent.to_hex());
    out.contributions.push_back({w.finish()});
    return out;
}

CeremonyResult run_ceremony(size_t max_degree, size_t contributions,
                            uint64_t seed, bool keep_trapdoor) {
    SeedTree seeds(seed);
    CeremonyResult result;
    result.accumulator = fresh_accumulator(max_degree);
    Fp product = Fp::one();
    for (size_t j = 0; j < contributions; j++) {
        auto entropy = seeds.entropy("ceremony/contribution/" + std::to_string(j));
        result.accumulator = ceremony_contribute(result.accumulator, entropy);
        if (keep_trapdoor) product *= contribution_secret(entropy);
    }
    if (keep_trapdoor)
        result.trapdoor = Trapdoor{product, result.accumulator.contributions};
    return result;
}

namespace {

// sum_k coeff_k * g^{s^k} evaluated purely with group operations.
GroupElement encode_poly(const Polynomial& poly,
                         const std::vector<GroupElement>& powers,
                         EngineKind engine) {
    GroupElement acc = GroupElement::identity(engine);
    const auto& cs = poly.coeffs();
    for (size_t k = 0; k < cs.size(); k++) {
        if (cs[k].is_zero()) continue;
        acc = group_add(acc, group_exp(powers[k], cs[k]));
    }
    return acc;
}

}  // namespace

CommonReferenceString phase2_specialize(const PotAccumulator& acc,
                                        const qap::QapInstance& qap,
                                        ExecPolicy policy) {
    const size_t m = qap.domain_size;
    if (acc.powers.size() < 2 * m + 1)
        throw DegreeOverflow("accumulator holds " +
                             std::to_string(acc.powers.size()) + " powers, need " +
                             std::to_string(2 * m + 1));

    CommonReferenceString crs;
    ProvingKey& pk = crs.pk;
    pk.engine = acc.engine;
    pk.num_instance = qap.num_instance;
    pk.num_witness = qap.num_witness;
    pk.powers.assign(acc.powers.begin(), acc.powers.begin() + (long)(2 * m + 1));
    pk.t_at_s = encode_poly(qap.t, pk.powers, acc.engine);

    const uint32_t wires = qap.num_wires();
    pk.v_enc.resize(wires);
    pk.w_enc.resize(wires);
    pk.y_enc.resize(wires);
    parallel_for(policy, wires, [&](size_t i) {
        pk.v_enc[i] = encode_poly(qap.v[i], pk.powers, acc.engine);
        pk.w_enc[i] = encode_poly(qap.w[i], pk.powers, acc.engine);
        pk.y_enc[i] = encode_poly(qap.y[i], pk.powers, acc.engine);
    });

    VerificationKey& vk = crs.vk;
    vk.engine = acc.engine;
    vk.num_instance = qap.num_instance;
    vk.domain_size = (uint32_t)m;
    vk.generator = GroupElement::generator(acc.engine);
    vk.t_at_s = pk.t_at_s;
    vk.v_inst.assign(pk.v_enc.begin(), pk.v_enc.begin() + qap.num_instance);
    vk.w_inst.assign(pk.w_enc.begin(), pk.w_enc.begin() + qap.num_instance);
    vk.y_inst.assign(pk.y_enc.begin(), pk.y_enc.begin() + qap.num_instance);
    return crs;
}

namespace {

// Witness-wire combination sum_{i >= start} z_i * enc[i] with per-thread
// partials; group addition is exact, so combine order cannot matter.
GroupElement combine_encodings(const std::vector<GroupElement>& enc,
                               const std::vector<Fp>& z, size_t start,
                               EngineKind engine, ExecPolicy policy) {
    const int threads = policy == ExecPolicy::parallel ? max_threads() : 1;
    std::vector<GroupElement> partial(threads, GroupElement::identity(engine));
    parallel_for(policy, z.size() - start, [&](size_t off) {
#ifdef _OPENMP
        const int tid = policy == ExecPolicy::parallel ? omp_get_thread_num() : 0;
#else
        const int tid = 0;
#endif
        const size_t i = start + off;
        if (z[i].is_zero()) return;
        partial[tid] = group_add(partial[tid], group_exp(enc[i], z[i]));
    });
    GroupElement acc = GroupElement::identity(engine);
    for (const auto& p : partial) acc = group_add(acc, p);
    return acc;
}

SnarkProof prove_impl(const CommonReferenceString& crs,
                      const qap::QapInstance& qap,
                      const circuit::Witness& witness, uint64_t seed,
                      ExecPolicy policy, bool check_satisfaction) {
    const std::vector<Fp>& z = witness.assignment;
    if (z.size() != qap.num_wires())
        throw DimensionError("witness length does not match QAP wire count");
    const EngineKind engine = crs.pk.engine;

    // Quotient h = p/t over the full assignment.
    Polynomial p = qap::assignment_poly(qap, z, policy);
    auto [h, rem] = poly_divmod(p, qap.t);
    if (check_satisfaction && !rem.is_zero())
        throw UnsatisfiedWitness("assignment does not satisfy the constraint system");

    // Blinding scalars, deterministic from the seed.
    std::mt19937_64 rng(SeedTree(seed).stream_seed("prove/blinding"));
    const Fp delta_v = random_nonzero_fp(rng);
    const Fp delta_w = random_nonzero_fp(rng);

    const size_t inst = qap.num_instance;
    GroupElement a_wit = combine_encodings(crs.pk.v_enc, z, inst, engine, policy);
    GroupElement b_wit = combine_encodings(crs.pk.w_enc, z, inst, engine, policy);
    GroupElement c_wit = combine_encodings(crs.pk.y_enc, z, inst, engine, policy);
    GroupElement a_full = combine_encodings(crs.pk.v_enc, z, 0, engine, policy);
    GroupElement b_full = combine_encodings(crs.pk.w_enc, z, 0, engine, policy);

    SnarkProof proof;
    proof.engine = engine;
    proof.a = group_add(a_wit, group_exp(crs.pk.t_at_s, delta_v));
    proof.b = group_add(b_wit, group_exp(crs.pk.t_at_s, delta_w));
    proof.c = c_wit;

    // H = g^{h(s)} adjusted so the blinded A, B still satisfy the pairing
    // equation: h + delta_v*w + delta_w*v + delta_v*delta_w*t in the
    // exponent.
    GroupElement h_enc = encode_poly(h, crs.pk.powers, engine);
    h_enc = group_add(h_enc, group_exp(b_full, delta_v));
    h_enc = group_add(h_enc, group_exp(a_full, delta_w));
    h_enc = group_add(h_enc, group_exp(crs.pk.t_at_s, delta_v * delta_w));
    proof.h = h_enc;
    return proof;
}

}  // namespace

SnarkProof prove(const CommonReferenceString& crs, const qap::QapInstance& qap,
                 const circuit::Witness& witness, uint64_t seed,
                 ExecPolicy policy) {
    return prove_impl(crs, qap, witness, seed, policy, true);
}

namespace detail {
SnarkProof prove_unchecked(const CommonReferenceString& crs,
                           const qap::QapInstance& qap,
                           const circuit::Witness& witness, uint64_t seed,
                           ExecPolicy policy) {
    return prove_impl(crs, qap, witness, seed, policy, false);
}
}  // namespace detail

bool verify(const VerificationKey& vk, const std::vector<Fp>& public_inputs,
            const SnarkProof& proof) {
    if (proof.engine != vk.engine || proof.a.engine != vk.engine ||
        proof.b.engine != vk.engine || proof.c.engine != vk.engine ||
        proof.h.engine != vk.engine)
        throw MalformedProof("proof/key engine mismatch");
    if (public_inputs.size() + 1 != vk.num_instance)
        throw DimensionError("expected " + std::to_string(vk.num_instance - 1) +
                             " public inputs, got " +
                             std::to_string(public_inputs.size()));

    GroupElement a_full = proof.a;
    GroupElement b_full = proof.b;
    GroupElement c_full = proof.c;
    for (uint32_t i = 0; i < vk.num_instance; i++) {
        const Fp zi = i == 0 ? Fp::one() : public_inputs[i - 1];
        if (zi.is_zero()) continue;
        a_full = group_add(a_full, group_exp(vk.v_inst[i], zi));
        b_full = group_add(b_full, group_exp(vk.w_inst[i], zi));
        c_full = group_add(c_full, group_exp(vk.y_inst[i], zi));
    }

    PairingOutput lhs = pairing(a_full, b_full);
    PairingOutput rhs = pairing_mul(pairing(c_full, vk.generator),
                                    pairing(vk.t_at_s, proof.h));
    return lhs == rhs;
}

SnarkProof simulate_proof(const CommonReferenceString& crs,
                          const std::vector<Fp>& public_inputs, uint64_t seed) {
    if (!crs.trapdoor)
        throw TrapdoorUnavailable("setup did not retain the trapdoor");
    const VerificationKey& vk = crs.vk;
    if (public_inputs.size() + 1 != vk.num_instance)
        throw DimensionError("expected " + std::to_string(vk.num_instance - 1) +
                             " public inputs, got " +
                             std::to_string(public_inputs.size()));

    const Fp s = crs.trapdoor->secret;
    Fp t_s = Fp::one();
    for (uint32_t j = 1; j <= vk.domain_size; j++) t_s *= s - Fp(j);
    if (t_s.is_zero())
        throw Error("degenerate trapdoor: secret lies in the evaluation domain");

    // Instance contributions as field values (reference-engine read).
    Fp v_inst, w_inst, y_inst;
    for (uint32_t i = 0; i < vk.num_instance; i++) {
        const Fp zi = i == 0 ? Fp::one() : public_inputs[i - 1];
        v_inst += zi * reference_exponent(vk.v_inst[i]);
        w_inst += zi * reference_exponent(vk.w_inst[i]);
        y_inst += zi * reference_exponent(vk.y_inst[i]);
    }

    std::mt19937_64 rng(SeedTree(seed).stream_seed("simulate"));
    const Fp r_a = random_fp(rng);
    const Fp r_b = random_fp(rng);
    const Fp c_wit = random_fp(rng);

    // Choose H so that r_a * r_b = (y_inst + c_wit) + t(s) * h.
    const Fp h_exp = (r_a * r_b - y_inst - c_wit) * t_s.inv();

    const GroupElement g = vk.generator;
    SnarkProof proof;
    proof.engine = vk.engine;
    proof.a = group_exp(g, r_a - v_inst);
    proof.b = group_exp(g, r_b - w_inst);
    proof.c = group_exp(g, c_wit);
    proof.h = group_exp(g, h_exp);
    return proof;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

constexpr char PROOF_MAGIC[5] = {'Z', 'K', 'A', 'I', '1'};
constexpr char VK_MAGIC[5] = {'Z', 'K', 'V', 'K', '1'};
constexpr char PK_MAGIC[5] = {'Z', 'K', 'P', 'K', '1'};
constexpr uint8_t FORMAT_VERSION = 1;

void put_hex(std::vector<uint8_t>& out, const Fp& v) {
    std::string h = v.to_hex();
    out.insert(out.end(), h.begin(), h.end());
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; i++) out.push_back(uint8_t(v >> (8 * i)));
}

class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    void expect_magic(const char magic[5], const char* what) {
        if (bytes_.size() < pos_ + 5 ||
            std::memcmp(bytes_.data() + pos_, magic, 5) != 0)
            throw MalformedEncoding(std::string(what) + ": bad magic");
        pos_ += 5;
    }
    uint8_t u8(const char* what) {
        if (bytes_.size() < pos_ + 1)
            throw MalformedEncoding(std::string(what) + ": truncated");
        return bytes_[pos_++];
    }
    uint32_t u32(const char* what) {
        if (bytes_.size() < pos_ + 4)
            throw MalformedEncoding(std::string(what) + ": truncated");
        uint32_t v = 0;
        for (int i = 0; i < 4; i++) v |= uint32_t(bytes_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }
    Fp fp(const char* what) {
        if (bytes_.size() < pos_ + 64)
            throw MalformedEncoding(std::string(what) + ": truncated");
        std::string_view hex(reinterpret_cast<const char*>(bytes_.data() + pos_), 64);
        pos_ += 64;
        return Fp::from_hex(hex);
    }
    void expect_end(const char* what) {
        if (pos_ != bytes_.size())
            throw MalformedEncoding(std::string(what) + ": trailing bytes");
    }

private:
    std::span<const uint8_t> bytes_;
    size_t pos_ = 0;
};

EngineKind engine_from_byte(uint8_t b, const char* what) {
    if (b != uint8_t(EngineKind::reference))
        throw MalformedEncoding(std::string(what) + ": unknown engine tag");
    return EngineKind::reference;
}

}  // namespace

std::vector<uint8_t> serialize_proof(const SnarkProof& proof) {
    std::vector<uint8_t> out;
    out.insert(out.end(), PROOF_MAGIC, PROOF_MAGIC + 5);
    out.push_back(FORMAT_VERSION);
    out.push_back(uint8_t(proof.engine));
    put_hex(out, proof.a.exponent);
    put_hex(out, proof.b.exponent);
    put_hex(out, proof.c.exponent);
    put_hex(out, proof.h.exponent);
    return out;
}

SnarkProof deserialize_proof(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    r.expect_magic(PROOF_MAGIC, "proof");
    if (r.u8("proof") != FORMAT_VERSION)
        throw MalformedEncoding("proof: unsupported version");
    SnarkProof proof;
    proof.engine = engine_from_byte(r.u8("proof"), "proof");
    proof.a = {proof.engine, r.fp("proof")};
    proof.b = {proof.engine, r.fp("proof")};
    proof.c = {proof.engine, r.fp("proof")};
    proof.h = {proof.engine, r.fp("proof")};
    r.expect_end("proof");
    return proof;
}

std::vector<uint8_t> serialize_vk(const VerificationKey& vk) {
    std::vector<uint8_t> out;
    out.insert(out.end(), VK_MAGIC, VK_MAGIC + 5);
    out.push_back(FORMAT_VERSION);
    out.push_back(uint8_t(vk.engine));
    put_u32(out, vk.domain_size);
    put_u32(out, vk.num_instance);
    put_hex(out, vk.generator.exponent);
    put_hex(out, vk.t_at_s.exponent);
    for (uint32_t i = 0; i < vk.num_instance; i++) {
        put_hex(out, vk.v_inst[i].exponent);
        put_hex(out, vk.w_inst[i].exponent);
        put_hex(out, vk.y_inst[i].exponent);
    }
    return out;
}

VerificationKey deserialize_vk(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    r.expect_magic(VK_MAGIC, "vk");
    if (r.u8("vk") != FORMAT_VERSION)
        throw MalformedEncoding("vk: unsupported version");
    VerificationKey vk;
    vk.engine = engine_from_byte(r.u8("vk"), "vk");
    vk.domain_size = r.u32("vk");
    vk.num_instance = r.u32("vk");
    vk.generator = {vk.engine, r.fp("vk")};
    vk.t_at_s = {vk.engine, r.fp("vk")};
    vk.v_inst.resize(vk.num_instance);
    vk.w_inst.resize(vk.num_instance);
    vk.y_inst.resize(vk.num_instance);
    for (uint32_t i = 0; i < vk.num_instance; i++) {
        vk.v_inst[i] = {vk.engine, r.fp("vk")};
        vk.w_inst[i] = {vk.engine, r.fp("vk")};
        vk.y_inst[i] = {vk.engine, r.fp("vk")};
    }
    r.expect_end("vk");
    return vk;
}

std::vector<uint8_t> serialize_pk(const ProvingKey& pk) {
    std::vector<uint8_t> out;
    out.insert(out.end(), PK_MAGIC, PK_MAGIC + 5);
    out.push_back(FORMAT_VERSION);
    out.push_back(uint8_t(pk.engine));
    put_u32(out, pk.num_instance);
    put_u32(out, pk.num_witness);
    put_u32(out, (uint32_t)pk.powers.size());
    put_hex(out, pk.t_at_s.exponent);
    for (const auto& p : pk.powers) put_hex(out, p.exponent);
    const uint32_t wires = pk.num_instance + pk.num_witness;
    for (uint32_t i = 0; i < wires; i++) {
        put_hex(out, pk.v_enc[i].exponent);
        put_hex(out, pk.w_enc[i].exponent);
        put_hex(out, pk.y_enc[i].exponent);
    }
    return out;
}

ProvingKey deserialize_pk(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    r.expect_magic(PK_MAGIC, "pk");
    if (r.u8("pk") != FORMAT_VERSION)
        throw MalformedEncoding("pk: unsupported version");
    ProvingKey pk;
    pk.engine = engine_from_byte(r.u8("pk"), "pk");
    pk.num_instance = r.u32("pk");
    pk.num_witness = r.u32("pk");
    const uint32_t n_powers = r.u32("pk");
    pk.t_at_s = {pk.engine, r.fp("pk")};
    pk.powers.resize(n_powers);
    for (uint32_t k = 0; k < n_powers; k++) pk.powers[k] = {pk.engine, r.fp("pk")};
    const uint32_t wires = pk.num_instance + pk.num_witness;
    pk.v_enc.resize(wires);
    pk.w_enc.resize(wires);
    pk.y_enc.resize(wires);
    for (uint32_t i = 0; i < wires; i++) {
        pk.v_enc[i] = {pk.engine, r.fp("pk")};
        pk.w_enc[i] = {pk.engine, r.fp("pk")};
        pk.y_enc[i] = {pk.engine, r.fp("pk")};
    }
    r.expect_end("pk");
    return pk;
}

}  // namespace zkai::snark
