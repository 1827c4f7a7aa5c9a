#pragma once

#include <zkai/fixed18.hpp>
#include <zkai/hash.hpp>
#include <zkai/oracle.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zkai::ledger {

enum class TxKind : uint8_t {
    deploy_vk = 1,
    submit_report = 2,
    fund_subscription = 3,
};

struct LedgerTx {
    uint64_t tx_id = 0;
    std::string sender;
    TxKind kind = TxKind::deploy_vk;
    std::vector<uint8_t> payload;
    uint64_t gas_used = 0;
    Fixed18 fee;  // ETH, gas_used * gas_price exactly
};

// Gas schedule. Defaults put one submit_report at exactly 0.000572 ETH
// (286000 gas at 2 gwei); both knobs are configurable.
struct FeeSchedule {
    Fixed18 gas_price = Fixed18::from_units(2000000000);  // 2 gwei in wei
    uint64_t gas_deploy_vk = 1200000;
    uint64_t gas_submit_report = 286000;
    uint64_t gas_fund = 50000;
};

// One verification outcome, chained to its predecessor so any historical
// mutation is detectable.
struct VerificationRecord {
    uint64_t request_id = 0;
    Digest public_input_digest{};
    bool verified = false;
    uint64_t tx_id = 0;
    Digest prev_hash{};
    Digest record_hash{};
};

struct VerifierContractState {
    std::map<std::string, std::vector<uint8_t>> vks;  // digest hex -> bytes
    std::vector<VerificationRecord> records;
};

// Single-writer simulated chain: sequential transactions, exact integer
// fee accounting, a verifier contract holding verification keys and an
// append-only, hash-chained record log. Subscription funding flows into
// the oracle network's book.
class Ledger {
public:
    Ledger(FeeSchedule fees, oracle::SubscriptionBook& subs)
        : fees_(fees), subs_(subs) {}

    // Registers verification key bytes; idempotent on identical bytes.
    // Throws MalformedEncoding when the key does not deserialize.
    Digest deploy_vk(const std::string& sender, const std::vector<uint8_t>& vk_bytes);

    bool vk_deployed(const Digest& digest) const;
    const std::vector<uint8_t>& vk_bytes(const Digest& digest) const;

    // On-chain verification: re-runs the pairing check against the stored
    // key (the oracle verdict is advisory) and appends a record carrying
    // the ledger's own verdict. Throws UnknownVerifier for an unregistered
    // key digest.
    const VerificationRecord& submit_report(const oracle::AggregatedReport& report,
                                            const Digest& vk_digest,
                                            const std::vector<uint8_t>& proof_bytes,
                                            const std::vector<Fp>& public_inputs,
                                            const std::string& sender);

    std::optional<VerificationRecord> query_record(uint64_t request_id) const;

    // Credits LINK to the subscription; charges ETH gas to the sender.
    const LedgerTx& fund_subscription(const std::string& sender, uint64_t sub_id,
                                      const Fixed18& amount_link);

    // Recomputes the record hash chain from genesis; false on any mismatch.
    bool validate_records() const;
    static Digest chain_record(const Digest& prev, const VerificationRecord& rec);

    const std::vector<LedgerTx>& transactions() const { return txs_; }
    const VerifierContractState& contract() const { return contract_; }
    Fixed18 total_fees() const;

    // Line-delimited JSON of transactions then records.
    std::string export_jsonl() const;

    // Whole-chain state snapshot for file-based CLI workflows. Restoring
    // validates the record hash chain.
    std::string to_state_json() const;
    void restore_state_json(const std::string& text);

    const FeeSchedule& fees() const { return fees_; }

    // direct record mutation for tamper-evidence tests
    VerifierContractState& contract_mutable() { return contract_; }

private:
    FeeSchedule fees_;
    oracle::SubscriptionBook& subs_;
    VerifierContractState contract_;
    std::vector<LedgerTx> txs_;
    uint64_t next_tx_id_ = 1;

    LedgerTx& append_tx(const std::string& sender, TxKind kind,
                        std::vector<uint8_t> payload, uint64_t gas);
};

}  // namespace zkai::ledger
