#include <zkai/oracle.hpp>

#include <zkai/errors.hpp>
#include <zkai/snark.hpp>

#include <json.hpp>

#include <algorithm>

namespace zkai::oracle {

uint64_t SubscriptionBook::create(const std::string& owner) {
    uint64_t id = next_id_++;
    subs_[id] = Subscription{id, owner, Fixed18()};
    return id;
}

Subscription& SubscriptionBook::get(uint64_t id) {
    auto it = subs_.find(id);
    if (it == subs_.end())
        throw UnknownSubscription("no subscription with id " + std::to_string(id));
    return it->second;
}

const Subscription& SubscriptionBook::get(uint64_t id) const {
    auto it = subs_.find(id);
    if (it == subs_.end())
        throw UnknownSubscription("no subscription with id " + std::to_string(id));
    return it->second;
}

bool SubscriptionBook::exists(uint64_t id) const { return subs_.count(id) > 0; }

void SubscriptionBook::credit(uint64_t id, const Fixed18& amount) {
    get(id).balance += amount;
}

void SubscriptionBook::debit(uint64_t id, const Fixed18& amount) {
    Subscription& sub = get(id);
    if (amount > sub.balance)
        throw InsufficientLink("subscription " + std::to_string(id) +
                               " balance " + sub.balance.to_string() +
                               " cannot cover " + amount.to_string());
    sub.balance -= amount;
}

std::string SubscriptionBook::to_state_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [id, sub] : subs_) {
        nlohmann::ordered_json j;
        j["id"] = id;
        j["owner"] = sub.owner;
        j["balance_link"] = sub.balance.to_string();
        arr.push_back(std::move(j));
    }
    nlohmann::ordered_json root;
    root["next_id"] = next_id_;
    root["subscriptions"] = std::move(arr);
    return root.dump(2);
}

void SubscriptionBook::restore_state_json(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
        subs_.clear();
        next_id_ = root.at("next_id").get<uint64_t>();
        for (const auto& j : root.at("subscriptions")) {
            Subscription sub;
            sub.id = j.at("id").get<uint64_t>();
            sub.owner = j.at("owner").get<std::string>();
            sub.balance = Fixed18::parse(j.at("balance_link").get<std::string>());
            subs_[sub.id] = std::move(sub);
        }
    } catch (const nlohmann::json::exception& e) {
        throw MalformedEncoding(std::string("bad subscription state: ") + e.what());
    }
}

Digest compute_execution_digest(const NodeReport& report, const VerifyTask& task) {
    HashWriter w;
    w.u64(report.request_id);
    w.u64(report.node_id);
    w.bytes(std::span<const uint8_t>(task.vk_digest));
    w.bytes(std::span<const uint8_t>(task.proof_bytes));
    w.str(task.claimed_output.to_hex());
    for (const auto& v : report.fetched_inputs) w.str(v.to_hex());
    w.u8(report.verified ? 1 : 0);
    w.u8(report.fetch_failed ? 1 : 0);
    return w.finish();
}

OracleNetwork::OracleNetwork(NetworkConfig config, SubscriptionBook& subs,
                             VkLookup vk_exists, VkFetch vk_fetch)
    : config_(config),
      subs_(subs),
      vk_exists_(std::move(vk_exists)),
      vk_fetch_(std::move(vk_fetch)),
      faults_(config.n_nodes, NodeFault::none) {}

Fixed18 OracleNetwork::estimate_cost() const {
    return config_.fees.base_fee + config_.fees.per_node_fee * config_.n_nodes;
}

uint64_t OracleNetwork::submit_request(const OracleRequest& req) {
    if (!vk_exists_(req.task.vk_digest))
        throw UnknownVerifier("verification key " + digest_hex(req.task.vk_digest) +
                              " is not deployed");
    // Fulfilment cost is estimated before dispatch; underfunded
    // subscriptions are rejected up front.
    const Fixed18 estimate = estimate_cost();
    const Subscription& sub = subs_.get(req.subscription_id);
    if (sub.balance < estimate)
        throw InsufficientLink("subscription balance " + sub.balance.to_string() +
                               " below estimated cost " + estimate.to_string());

    OracleRequest stored = req;
    stored.request_id = next_request_id_++;
    requests_[stored.request_id] = stored;
    states_[stored.request_id] = RequestState::pending;

    nlohmann::ordered_json j;
    j["event"] = "request";
    j["request_id"] = stored.request_id;
    j["subscription_id"] = stored.subscription_id;
    j["requester"] = stored.requester;
    j["estimated_cost_link"] = estimate.to_string();
    j["vk_digest"] = digest_hex(stored.task.vk_digest);
    audit_.push_back(j.dump());
    return stored.request_id;
}

void OracleNetwork::set_fault(uint32_t node_id, NodeFault fault) {
    faults_.at(node_id) = fault;
}

void OracleNetwork::clear_faults() {
    std::fill(faults_.begin(), faults_.end(), NodeFault::none);
}

std::vector<double> OracleNetwork::fetch_row(const VerifyTask& task) const {
    if (const auto* csv = std::get_if<CsvSource>(&task.source)) {
        data::Dataset d;
        try {
            // Fixture files carry the same layout the pipeline ingests;
            // the target column is present but unused here.
            d = data::load_csv(csv->path, task.source_target_column);
        } catch (const Error& e) {
            throw FetchError(std::string("data source unreachable: ") + e.what());
        }
        if (task.row_index >= d.n_rows())
            throw FetchError("row " + std::to_string(task.row_index) +
                             " beyond fixture size " + std::to_string(d.n_rows()));
        std::vector<double> row(task.feature_names.size());
        for (size_t j = 0; j < task.feature_names.size(); j++) {
            row[j] = d.rows[task.row_index][d.feature_index(task.feature_names[j])];
        }
        return row;
    }
    const auto& inline_rows = std::get<InlineSource>(task.source).rows;
    if (task.row_index >= inline_rows.size())
        throw FetchError("row " + std::to_string(task.row_index) +
                         " beyond stub size " + std::to_string(inline_rows.size()));
    return inline_rows[task.row_index];
}

NodeReport OracleNetwork::node_execute(uint32_t node_id,
                                       const OracleRequest& req) const {
    const VerifyTask& task = req.task;
    NodeReport report;
    report.node_id = node_id;
    report.request_id = req.request_id;

    try {
        std::vector<double> raw = fetch_row(task);
        std::vector<double> scaled = task.scaler.transform(raw);
        report.fetched_inputs.reserve(scaled.size() + 1);
        for (double v : scaled)
            report.fetched_inputs.push_back(model::quantize_value(v, task.scale_bits));
        // full instance vector for verification: inputs then claimed output
        std::vector<Fp> public_inputs = report.fetched_inputs;
        public_inputs.push_back(task.claimed_output);

        snark::VerificationKey vk = snark::deserialize_vk(
            std::span<const uint8_t>(vk_fetch_(task.vk_digest)));
        snark::SnarkProof proof = snark::deserialize_proof(
            std::span<const uint8_t>(task.proof_bytes));
        report.verified = snark::verify(vk, public_inputs, proof);
    } catch (const FetchError&) {
        report.fetch_failed = true;
        report.verified = false;
        report.fetched_inputs.clear();
    } catch (const MalformedEncoding&) {
        // Undecodable artifacts count as a failed verification, not a
        // crashed round.
        report.verified = false;
    }

    const NodeFault fault = node_id < faults_.size() ? faults_[node_id]
                                                     : NodeFault::none;
    if (fault == NodeFault::flip_verdict) {
        report.verified = !report.verified;
    } else if (fault == NodeFault::corrupt_inputs) {
        for (size_t j = 0; j < report.fetched_inputs.size(); j++) {
            report.fetched_inputs[j] += Fp(uint64_t(1) << (j % 16));
        }
        report.verified = !report.verified;
    }

    report.execution_digest = compute_execution_digest(report, task);
    return report;
}

AggregatedReport OracleNetwork::aggregate(std::vector<NodeReport> reports,
                                          uint32_t n_nodes) const {
    const uint32_t quorum_needed = n_nodes / 2 + 1;
    if (reports.size() < quorum_needed)
        throw QuorumFailure("received " + std::to_string(reports.size()) +
                            " reports, quorum is " + std::to_string(quorum_needed));

    // Deterministic fold order regardless of arrival order.
    std::sort(reports.begin(), reports.end(),
              [](const NodeReport& a, const NodeReport& b) {
                  return a.node_id < b.node_id;
              });

    AggregatedReport agg;
    agg.request_id = reports.front().request_id;
    agg.quorum_size = (uint32_t)reports.size();

    uint32_t yes = 0;
    for (const auto& r : reports) {
        agg.contributing_nodes.push_back(r.node_id);
        if (r.verified) yes++;
    }
    // strict majority of submitted reports
    agg.verified = yes > agg.quorum_size - yes;

    // Per-coordinate lower median of the fetched rows (reports that failed
    // to fetch contribute no values).
    size_t width = 0;
    for (const auto& r : reports)
        if (!r.fetch_failed) width = std::max(width, r.fetched_inputs.size());
    for (size_t j = 0; j < width; j++) {
        std::vector<U256> values;
        for (const auto& r : reports) {
            if (!r.fetch_failed && j < r.fetched_inputs.size())
                values.push_back(r.fetched_inputs[j].to_u256());
        }
        if (values.empty()) continue;
        std::sort(values.begin(), values.end(),
                  [](const U256& a, const U256& b) { return a < b; });
        agg.aggregated_inputs.push_back(
            Fp::from_u256(values[(values.size() - 1) / 2]));
    }

    agg.total_link_cost =
        config_.fees.base_fee + config_.fees.per_node_fee * agg.quorum_size;
    return agg;
}

void OracleNetwork::bill_link(uint64_t subscription_id,
                              const AggregatedReport& report) {
    try {
        subs_.debit(subscription_id, report.total_link_cost);
    } catch (const InsufficientLink&) {
        states_[report.request_id] = RequestState::failed_billing;
        throw;
    }
    nlohmann::ordered_json j;
    j["event"] = "billing";
    j["request_id"] = report.request_id;
    j["link_cost"] = report.total_link_cost.to_string();
    audit_.push_back(j.dump());
}

OracleNetwork::RoundResult OracleNetwork::run_round(uint64_t request_id,
                                                    ExecPolicy policy) {
    const OracleRequest& req = request(request_id);
    if (states_.at(request_id) != RequestState::pending)
        throw Error("request " + std::to_string(request_id) + " is not pending");

    // Independent sandboxed executions; one slot per node.
    std::vector<std::optional<NodeReport>> slots(config_.n_nodes);
    parallel_for(policy, config_.n_nodes, [&](size_t node) {
        if (faults_[node] == NodeFault::crash) return;
        slots[node] = node_execute((uint32_t)node, req);
    });

    RoundResult result;
    for (auto& slot : slots)
        if (slot) result.reports.push_back(std::move(*slot));

    for (const auto& r : result.reports) {
        nlohmann::ordered_json j;
        j["event"] = "node_report";
        j["request_id"] = r.request_id;
        j["node_id"] = r.node_id;
        j["verified"] = r.verified;
        j["fetch_failed"] = r.fetch_failed;
        j["execution_digest"] = digest_hex(r.execution_digest);
        audit_.push_back(j.dump());
    }

    result.aggregated = aggregate(result.reports, config_.n_nodes);
    bill_link(req.subscription_id, result.aggregated);
    states_[request_id] = RequestState::fulfilled;

    nlohmann::ordered_json j;
    j["event"] = "aggregated";
    j["request_id"] = result.aggregated.request_id;
    j["quorum_size"] = result.aggregated.quorum_size;
    j["verified"] = result.aggregated.verified;
    j["link_cost"] = result.aggregated.total_link_cost.to_string();
    audit_.push_back(j.dump());
    return result;
}

RequestState OracleNetwork::state(uint64_t request_id) const {
    auto it = states_.find(request_id);
    if (it == states_.end())
        throw Error("unknown request id " + std::to_string(request_id));
    return it->second;
}

const OracleRequest& OracleNetwork::request(uint64_t request_id) const {
    auto it = requests_.find(request_id);
    if (it == requests_.end())
        throw Error("unknown request id " + std::to_string(request_id));
    return it->second;
}

}  // namespace zkai::oracle
