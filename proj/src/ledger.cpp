#include <zkai/ledger.hpp>

#include <zkai/errors.hpp>
#include <zkai/snark.hpp>

#include <json.hpp>

namespace zkai::ledger {

LedgerTx& Ledger::append_tx(const std::string& sender, TxKind kind,
                            std::vector<uint8_t> payload, uint64_t gas) {
    LedgerTx tx;
    tx.tx_id = next_tx_id_++;
    tx.sender = sender;
    tx.kind = kind;
    tx.payload = std::move(payload);
    tx.gas_used = gas;
    tx.fee = fees_.gas_price * gas;
    txs_.push_back(std::move(tx));
    return txs_.back();
}

Digest Ledger::deploy_vk(const std::string& sender,
                         const std::vector<uint8_t>& vk_bytes) {
    // must deserialize before it can be stored
    (void)snark::deserialize_vk(std::span<const uint8_t>(vk_bytes));

    Digest digest = sha256(std::span<const uint8_t>(vk_bytes));
    contract_.vks.emplace(digest_hex(digest), vk_bytes);  // idempotent
    append_tx(sender, TxKind::deploy_vk,
              std::vector<uint8_t>(digest.begin(), digest.end()),
              fees_.gas_deploy_vk);
    return digest;
}

bool Ledger::vk_deployed(const Digest& digest) const {
    return contract_.vks.count(digest_hex(digest)) > 0;
}

const std::vector<uint8_t>& Ledger::vk_bytes(const Digest& digest) const {
    auto it = contract_.vks.find(digest_hex(digest));
    if (it == contract_.vks.end())
        throw UnknownVerifier("verification key " + digest_hex(digest) +
                              " is not deployed");
    return it->second;
}

Digest Ledger::chain_record(const Digest& prev, const VerificationRecord& rec) {
    HashWriter w;
    w.bytes(std::span<const uint8_t>(prev));
    w.u64(rec.request_id);
    w.bytes(std::span<const uint8_t>(rec.public_input_digest));
    w.u8(rec.verified ? 1 : 0);
    w.u64(rec.tx_id);
    return w.finish();
}

const VerificationRecord& Ledger::submit_report(
    const oracle::AggregatedReport& report, const Digest& vk_digest,
    const std::vector<uint8_t>& proof_bytes, const std::vector<Fp>& public_inputs,
    const std::string& sender) {
    const std::vector<uint8_t>& stored_vk = vk_bytes(vk_digest);

    // The chain re-checks the proof itself; a tampered proof or input set
    // fails here no matter what the oracle round concluded.
    bool verdict = false;
    try {
        snark::VerificationKey vk =
            snark::deserialize_vk(std::span<const uint8_t>(stored_vk));
        snark::SnarkProof proof =
            snark::deserialize_proof(std::span<const uint8_t>(proof_bytes));
        verdict = snark::verify(vk, public_inputs, proof);
    } catch (const Error&) {
        verdict = false;  // undecodable or mismatched artifacts never verify
    }

    LedgerTx& tx = append_tx(sender, TxKind::submit_report, proof_bytes,
                             fees_.gas_submit_report);

    HashWriter pj;
    for (const auto& v : public_inputs) pj.str(v.to_hex());

    VerificationRecord rec;
    rec.request_id = report.request_id;
    rec.public_input_digest = pj.finish();
    rec.verified = verdict;
    rec.tx_id = tx.tx_id;
    rec.prev_hash = contract_.records.empty() ? Digest{}
                                              : contract_.records.back().record_hash;
    rec.record_hash = chain_record(rec.prev_hash, rec);
    contract_.records.push_back(rec);
    return contract_.records.back();
}

std::optional<VerificationRecord> Ledger::query_record(uint64_t request_id) const {
    for (const auto& rec : contract_.records) {
        if (rec.request_id == request_id) return rec;
    }
    return std::nullopt;
}

const LedgerTx& Ledger::fund_subscription(const std::string& sender,
                                          uint64_t sub_id,
                                          const Fixed18& amount_link) {
    if (!(amount_link > Fixed18()))
        throw std::invalid_argument("funding amount must be positive");
    if (!subs_.exists(sub_id))
        throw UnknownSubscription("no subscription with id " + std::to_string(sub_id));
    subs_.credit(sub_id, amount_link);
    std::string note = "fund:" + std::to_string(sub_id) + ":" + amount_link.to_string();
    return append_tx(sender, TxKind::fund_subscription,
                     std::vector<uint8_t>(note.begin(), note.end()), fees_.gas_fund);
}

bool Ledger::validate_records() const {
    Digest prev{};
    for (const auto& rec : contract_.records) {
        if (rec.prev_hash != prev) return false;
        if (chain_record(prev, rec) != rec.record_hash) return false;
        prev = rec.record_hash;
    }
    return true;
}

Fixed18 Ledger::total_fees() const {
    Fixed18 total;
    for (const auto& tx : txs_) total += tx.fee;
    return total;
}

namespace {
std::string bytes_to_hex(const std::vector<uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

std::vector<uint8_t> bytes_from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw MalformedEncoding("odd-length byte hex");
    auto nibble = [](char c) -> uint8_t {
        if (c >= '0' && c <= '9') return uint8_t(c - '0');
        if (c >= 'a' && c <= 'f') return uint8_t(c - 'a' + 10);
        throw MalformedEncoding("invalid byte hex digit");
    };
    std::vector<uint8_t> out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); i++)
        out[i] = uint8_t((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    return out;
}
}  // namespace

std::string Ledger::to_state_json() const {
    nlohmann::ordered_json root;
    root["next_tx_id"] = next_tx_id_;

    nlohmann::ordered_json txs = nlohmann::ordered_json::array();
    for (const auto& tx : txs_) {
        nlohmann::ordered_json j;
        j["tx_id"] = tx.tx_id;
        j["sender"] = tx.sender;
        j["kind"] = int(tx.kind);
        j["payload"] = bytes_to_hex(tx.payload);
        j["gas_used"] = tx.gas_used;
        j["fee_eth"] = tx.fee.to_string();
        txs.push_back(std::move(j));
    }
    root["transactions"] = std::move(txs);

    nlohmann::ordered_json vks = nlohmann::ordered_json::object();
    for (const auto& [digest, bytes] : contract_.vks) vks[digest] = bytes_to_hex(bytes);
    root["vks"] = std::move(vks);

    nlohmann::ordered_json recs = nlohmann::ordered_json::array();
    for (const auto& rec : contract_.records) {
        nlohmann::ordered_json j;
        j["request_id"] = rec.request_id;
        j["public_input_digest"] = digest_hex(rec.public_input_digest);
        j["verified"] = rec.verified;
        j["tx_id"] = rec.tx_id;
        j["prev_hash"] = digest_hex(rec.prev_hash);
        j["record_hash"] = digest_hex(rec.record_hash);
        recs.push_back(std::move(j));
    }
    root["records"] = std::move(recs);
    return root.dump(2);
}

void Ledger::restore_state_json(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
        txs_.clear();
        contract_ = VerifierContractState{};
        next_tx_id_ = root.at("next_tx_id").get<uint64_t>();
        for (const auto& j : root.at("transactions")) {
            LedgerTx tx;
            tx.tx_id = j.at("tx_id").get<uint64_t>();
            tx.sender = j.at("sender").get<std::string>();
            tx.kind = TxKind(j.at("kind").get<int>());
            tx.payload = bytes_from_hex(j.at("payload").get<std::string>());
            tx.gas_used = j.at("gas_used").get<uint64_t>();
            tx.fee = Fixed18::parse(j.at("fee_eth").get<std::string>());
            txs_.push_back(std::move(tx));
        }
        for (const auto& [digest, hex] : root.at("vks").items())
            contract_.vks[digest] = bytes_from_hex(hex.get<std::string>());
        for (const auto& j : root.at("records")) {
            VerificationRecord rec;
            rec.request_id = j.at("request_id").get<uint64_t>();
            rec.public_input_digest =
                digest_from_hex(j.at("public_input_digest").get<std::string>());
            rec.verified = j.at("verified").get<bool>();
            rec.tx_id = j.at("tx_id").get<uint64_t>();
            rec.prev_hash = digest_from_hex(j.at("prev_hash").get<std::string>());
            rec.record_hash = digest_from_hex(j.at("record_hash").get<std::string>());
            contract_.records.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw MalformedEncoding(std::string("bad ledger state: ") + e.what());
    }
    if (!validate_records())
        throw MalformedEncoding("ledger state failed hash-chain validation");
}

std::string Ledger::export_jsonl() const {
    std::string out;
    for (const auto& tx : txs_) {
        nlohmann::ordered_json j;
        j["type"] = "tx";
        j["tx_id"] = tx.tx_id;
        j["sender"] = tx.sender;
        j["kind"] = int(tx.kind);
        j["payload_bytes"] = tx.payload.size();
        j["gas_used"] = tx.gas_used;
        j["fee_eth"] = tx.fee.to_string();
        out += j.dump();
        out += '\n';
    }
    for (const auto& rec : contract_.records) {
        nlohmann::ordered_json j;
        j["type"] = "record";
        j["request_id"] = rec.request_id;
        j["public_input_digest"] = digest_hex(rec.public_input_digest);
        j["verified"] = rec.verified;
        j["tx_id"] = rec.tx_id;
        j["prev_hash"] = digest_hex(rec.prev_hash);
        j["record_hash"] = digest_hex(rec.record_hash);
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace zkai::ledger
