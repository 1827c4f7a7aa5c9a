#pragma once

#include <zkai/dataset.hpp>
#include <zkai/exec.hpp>
#include <zkai/field.hpp>
#include <zkai/fixed18.hpp>
#include <zkai/hash.hpp>
#include <zkai/model.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace zkai::oracle {

// Prepaid balance debited per request, 18-decimal LINK units.
struct Subscription {
    uint64_t id = 0;
    std::string owner;
    Fixed18 balance;
};

class SubscriptionBook {
public:
    uint64_t create(const std::string& owner);
    Subscription& get(uint64_t id);              // UnknownSubscription if absent
    const Subscription& get(uint64_t id) const;
    bool exists(uint64_t id) const;
    void credit(uint64_t id, const Fixed18& amount);
    // Debits, guaranteeing the balance never goes negative.
    void debit(uint64_t id, const Fixed18& amount);  // InsufficientLink

    std::string to_state_json() const;
    void restore_state_json(const std::string& text);

private:
    std::map<uint64_t, Subscription> subs_;
    uint64_t next_id_ = 1;
};

// Where a node obtains the feature row it verifies against: a CSV fixture
// on disk (same format the pipeline ingests) or rows injected directly by
// a test stub.
struct CsvSource {
    std::string path;
};
struct InlineSource {
    std::vector<std::vector<double>> rows;
};
using DataSource = std::variant<CsvSource, InlineSource>;

// Full task descriptor shipped to every node. Nodes see nothing else:
// no ledger handle, no filesystem beyond the named source.
struct VerifyTask {
    Digest vk_digest{};
    std::vector<uint8_t> proof_bytes;
    DataSource source;
    std::string source_target_column = "price";  // fixture parsing only
    std::size_t row_index = 0;
    std::vector<std::string> feature_names;
    data::ScalerParams scaler;
    unsigned scale_bits = 16;
    Fp claimed_output;  // public output at the product scale
};

struct OracleRequest {
    uint64_t request_id = 0;
    uint64_t subscription_id = 0;
    VerifyTask task;
    uint64_t gas_limit = 300000;
    std::string requester;
};

enum class RequestState { pending, fulfilled, failed_billing };

struct NodeReport {
    uint32_t node_id = 0;
    uint64_t request_id = 0;
    bool verified = false;
    std::vector<Fp> fetched_inputs;  // quantized feature row
    bool fetch_failed = false;
    Digest execution_digest{};
};

Digest compute_execution_digest(const NodeReport& report, const VerifyTask& task);

struct AggregatedReport {
    uint64_t request_id = 0;
    uint32_t quorum_size = 0;
    bool verified = false;
    std::vector<Fp> aggregated_inputs;  // per-coordinate lower median
    std::vector<uint32_t> contributing_nodes;
    Fixed18 total_link_cost;
};

// Per-node fault injection for byzantine testing.
enum class NodeFault {
    none,
    flip_verdict,     // reports the negated verification result
    corrupt_inputs,   // reports garbage fetched values
    crash,            // submits no report
};

struct FeeParams {
    Fixed18 base_fee = Fixed18::parse("0.10");       // LINK
    Fixed18 per_node_fee = Fixed18::parse("0.05");   // LINK per contributing node
};

struct NetworkConfig {
    uint32_t n_nodes = 4;
    FeeParams fees;
};

// Simulated decentralized oracle network. Nodes execute verification
// tasks independently (optionally in parallel) in a sandboxed fashion:
// each node function receives only the task descriptor. Results fold into
// one aggregated report per request.
class OracleNetwork {
public:
    using VkLookup = std::function<bool(const Digest&)>;
    using VkFetch = std::function<std::vector<uint8_t>(const Digest&)>;

    OracleNetwork(NetworkConfig config, SubscriptionBook& subs,
                  VkLookup vk_exists, VkFetch vk_fetch);

    // Enqueues a verification request after checking the verifier is
    // deployed and the subscription can cover the worst-case cost.
    // Throws UnknownVerifier / InsufficientLink.
    uint64_t submit_request(const OracleRequest& req);

    // Worst-case request cost (every node contributes).
    Fixed18 estimate_cost() const;

    void set_fault(uint32_t node_id, NodeFault fault);
    void clear_faults();

    // Sandboxed execution of one node: fetch, quantize, verify, report.
    // A fetch failure is reported, not thrown.
    NodeReport node_execute(uint32_t node_id, const OracleRequest& req) const;

    // Strict-majority boolean aggregation plus per-coordinate lower-median
    // input aggregation, folded in ascending node-id order. Throws
    // QuorumFailure when reports < floor(n/2) + 1.
    AggregatedReport aggregate(std::vector<NodeReport> reports,
                               uint32_t n_nodes) const;

    // Debits the request cost from the subscription.
    // Throws InsufficientLink and marks the request failed-billing.
    void bill_link(uint64_t subscription_id, const AggregatedReport& report);

    struct RoundResult {
        std::vector<NodeReport> reports;
        AggregatedReport aggregated;
    };
    // Executes all nodes for a pending request, aggregates, and bills.
    RoundResult run_round(uint64_t request_id,
                          ExecPolicy policy = ExecPolicy::parallel);

    RequestState state(uint64_t request_id) const;
    const OracleRequest& request(uint64_t request_id) const;

    // Line-delimited JSON audit trail of requests and reports.
    const std::vector<std::string>& audit_log() const { return audit_; }

private:
    NetworkConfig config_;
    SubscriptionBook& subs_;
    VkLookup vk_exists_;
    VkFetch vk_fetch_;
    std::vector<NodeFault> faults_;
    std::map<uint64_t, OracleRequest> requests_;
    std::map<uint64_t, RequestState> states_;
    std::vector<std::string> audit_;
    uint64_t next_request_id_ = 1;

    std::vector<double> fetch_row(const VerifyTask& task) const;
};

}  // namespace zkai::oracle
