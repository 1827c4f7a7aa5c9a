#include <zkai/pipeline.hpp>

#include <zkai/errors.hpp>
#include <zkai/qap.hpp>
#include <zkai/rng.hpp>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>

namespace zkai::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
public:
    explicit StageTimer(double& slot) : slot_(slot), start_(Clock::now()) {}
    ~StageTimer() {
        slot_ += std::chrono::duration<double>(Clock::now() - start_).count();
    }

private:
    double& slot_;
    Clock::time_point start_;
};

[[noreturn]] void stage_fail(const std::string& stage, const std::exception& e) {
    throw Error("stage '" + stage + "' failed: " + e.what());
}

std::string make_run_id(const PipelineConfig& config, size_t n_selected) {
    HashWriter w;
    w.u64(config.seed);
    w.str(config.dataset_path);
    w.str(config.target_name);
    w.u64(n_selected);
    w.u64(uint64_t(config.contributions));
    w.u64(config.nodes);
    w.str(fault_to_string(config.fault));
    return digest_hex(w.finish()).substr(0, 16);
}

// Swap one hex digit of a serialized artifact for a different valid digit,
// so the bytes still decode but to a different element.
void corrupt_hex_byte(std::vector<uint8_t>& bytes, size_t pos) {
    uint8_t c = bytes.at(pos);
    bytes[pos] = (c == '0') ? '1' : '0';
}

}  // namespace

FaultKind fault_from_string(const std::string& name) {
    if (name.empty() || name == "none") return FaultKind::none;
    if (name == "tamper-proof") return FaultKind::tamper_proof;
    if (name == "tamper-witness") return FaultKind::tamper_witness;
    if (name == "tamper-public-input") return FaultKind::tamper_public_input;
    if (name == "byzantine-node") return FaultKind::byzantine_node;
    throw std::invalid_argument("unknown fault kind: " + name);
}

std::string fault_to_string(FaultKind fault) {
    switch (fault) {
        case FaultKind::none: return "none";
        case FaultKind::tamper_proof: return "tamper-proof";
        case FaultKind::tamper_witness: return "tamper-witness";
        case FaultKind::tamper_public_input: return "tamper-public-input";
        case FaultKind::byzantine_node: return "byzantine-node";
    }
    return "none";
}

PipelineResult run_pipeline(const PipelineConfig& config) {
    PipelineResult result;
    BenchReport& report = result.report;
    StageTimings& t = report.timings;
    report.seed = config.seed;
    report.fault = fault_to_string(config.fault);

    // --- ingest + analyze + train (data stages, untimed) ---
    data::Dataset raw_selected;  // cleaned rows, pre-normalization
    data::Dataset working;
    data::ScalerParams scaler;
    try {
        data::Dataset raw = data::load_csv(config.dataset_path, config.target_name);
        data::CleanResult cleaned = data::clean(raw);
        data::CorrelationReport corr = data::analyze(cleaned.dataset, config.policy);
        std::vector<std::string> selected =
            config.n_features ? data::select_top_features(corr, *config.n_features)
                              : data::select_features(corr, config.threshold);
        if (selected.empty())
            throw InsufficientData("no feature reaches the correlation threshold");
        report.selected_features = selected;
        raw_selected = cleaned.dataset.select(selected);
        std::tie(working, scaler) = data::normalize(raw_selected);
    } catch (const Error& e) {
        stage_fail("ingest", e);
    }

    model::QuantizedModel qmodel;
    std::vector<double> probe_row_raw;
    data::Dataset eval_split;
    try {
        const size_t n_rows = working.n_rows();
        size_t split = size_t(std::floor(double(n_rows) * config.train_fraction));
        split = std::min(std::max<size_t>(split, working.n_features() + 1), n_rows - 1);

        data::Dataset train = working;
        train.rows.assign(working.rows.begin(), working.rows.begin() + (long)split);
        train.targets.assign(working.targets.begin(),
                             working.targets.begin() + (long)split);
        eval_split = working;
        eval_split.rows.assign(working.rows.begin() + (long)split, working.rows.end());
        eval_split.targets.assign(working.targets.begin() + (long)split,
                                  working.targets.end());

        result.trained = model::fit(train);
        result.trained.scaler = scaler;
        result.claim = model::evaluate_mse(result.trained, eval_split);
        report.claimed_mse = result.claim.mse;
        report.dataset_digest = digest_hex(result.claim.dataset_digest);
        qmodel = model::quantize(result.trained, config.scale_bits);
    } catch (const Error& e) {
        stage_fail("train", e);
    }

    const size_t n = qmodel.n_features();
    report.n_features = n;
    report.run_id = make_run_id(config, n);

    // The inference being verified: the most recent evaluation row, in raw
    // units. The oracle nodes rescale it through the same stored scaler the
    // prover uses, so both sides quantize identical values.
    probe_row_raw = raw_selected.rows.back();

    // --- compile ---
    circuit::R1CSSystem sys;
    try {
        StageTimer timer(t.compile);
        sys = circuit::compile_linear((uint32_t)n);
        report.n_constraints = sys.constraints.size();
    } catch (const std::exception& e) {
        stage_fail("compile", e);
    }

    // --- witness ---
    circuit::Witness witness;
    std::vector<Fp> x_quantized;
    try {
        StageTimer timer(t.witness);
        std::vector<double> probe_scaled = scaler.transform(probe_row_raw);
        x_quantized.reserve(n);
        for (double v : probe_scaled)
            x_quantized.push_back(model::quantize_value(v, config.scale_bits));
        witness = circuit::generate_witness(sys, qmodel, x_quantized);
    } catch (const std::exception& e) {
        stage_fail("witness", e);
    }

    bool witness_tampered = false;
    if (config.fault == FaultKind::tamper_witness) {
        witness.assignment[sys.weight_wire(0)] += Fp::one();
        witness_tampered = true;
    }

    // --- trusted setup ---
    const size_t m = sys.constraints.size();
    snark::PotAccumulator acc;
    try {
        StageTimer timer(t.pot);
        acc = snark::fresh_accumulator(2 * m);
    } catch (const std::exception& e) {
        stage_fail("pot", e);
    }

    SeedTree seeds(config.seed);
    try {
        StageTimer timer(t.ceremony);
        for (size_t j = 0; j < config.contributions; j++) {
            acc = snark::ceremony_contribute(
                acc, seeds.entropy("ceremony/contribution/" + std::to_string(j)));
        }
    } catch (const std::exception& e) {
        stage_fail("ceremony", e);
    }

    qap::QapInstance qap_inst;
    snark::CommonReferenceString crs;
    try {
        StageTimer timer(t.phase2);
        qap_inst = qap::r1cs_to_qap(sys, config.policy);
        crs = snark::phase2_specialize(acc, qap_inst, config.policy);
    } catch (const std::exception& e) {
        stage_fail("phase2", e);
    }

    try {
        StageTimer timer(t.zkey);
        result.vk_bytes = snark::serialize_vk(crs.vk);
        report.vk_bytes = result.vk_bytes.size();
        (void)snark::serialize_pk(crs.pk);  // at-rest proving key
    } catch (const std::exception& e) {
        stage_fail("zkey", e);
    }

    // --- prove ---
    try {
        StageTimer timer(t.proof);
        const uint64_t prove_seed = seeds.stream_seed("prove");
        snark::SnarkProof proof =
            witness_tampered
                ? snark::detail::prove_unchecked(crs, qap_inst, witness, prove_seed,
                                                 config.policy)
                : snark::prove(crs, qap_inst, witness, prove_seed, config.policy);
        result.proof_bytes = snark::serialize_proof(proof);
        report.proof_bytes = result.proof_bytes.size();
    } catch (const std::exception& e) {
        stage_fail("proof", e);
    }

    if (config.fault == FaultKind::tamper_proof) {
        corrupt_hex_byte(result.proof_bytes, result.proof_bytes.size() / 2);
    }

    result.public_inputs = circuit::public_inputs_of(sys, witness);
    Fp claimed_output = witness.assignment[sys.output_wire()];
    if (config.fault == FaultKind::tamper_public_input) {
        claimed_output += Fp::one();
        result.public_inputs.back() = claimed_output;
    }

    // --- prover-side verification ---
    try {
        StageTimer timer(t.verify);
        snark::SnarkProof proof =
            snark::deserialize_proof(std::span<const uint8_t>(result.proof_bytes));
        (void)snark::verify(crs.vk, result.public_inputs, proof);
    } catch (const Error&) {
        // a tampered artifact may not even decode; the oracle and the
        // ledger below deliver the operative verdict
    }

    // --- decentralized verification loop ---
    oracle::SubscriptionBook subs;
    ledger::Ledger chain(ledger::FeeSchedule{}, subs);

    Digest vk_digest{};
    try {
        StageTimer timer(t.ledger_overhead);
        vk_digest = chain.deploy_vk("model-developer", result.vk_bytes);
    } catch (const std::exception& e) {
        stage_fail("deploy", e);
    }

    oracle::NetworkConfig net_config;
    net_config.n_nodes = config.nodes;
    oracle::OracleNetwork network(
        net_config, subs,
        [&](const Digest& d) { return chain.vk_deployed(d); },
        [&](const Digest& d) { return chain.vk_bytes(d); });
    if (config.fault == FaultKind::byzantine_node)
        network.set_fault(0, oracle::NodeFault::flip_verdict);

    uint64_t request_id = 0;
    oracle::OracleNetwork::RoundResult round;
    try {
        StageTimer timer(t.oracle_overhead);
        uint64_t sub_id = subs.create("model-buyer");
        {
            StageTimer ledger_timer(t.ledger_overhead);
            chain.fund_subscription("model-buyer", sub_id, Fixed18::parse("2"));
        }

        oracle::OracleRequest req;
        req.subscription_id = sub_id;
        req.requester = "model-buyer";
        req.task.vk_digest = vk_digest;
        req.task.proof_bytes = result.proof_bytes;
        req.task.source = oracle::InlineSource{{probe_row_raw}};
        req.task.row_index = 0;
        req.task.feature_names = qmodel.feature_names;
        req.task.scaler = scaler;
        req.task.scale_bits = config.scale_bits;
        req.task.claimed_output = claimed_output;

        request_id = network.submit_request(req);
        round = network.run_round(request_id, config.policy);
        result.aggregated = round.aggregated;
        report.link_cost_per_request = round.aggregated.total_link_cost;
    } catch (const std::exception& e) {
        stage_fail("oracle", e);
    }

    try {
        StageTimer timer(t.ledger_overhead);
        std::vector<Fp> chain_inputs = round.aggregated.aggregated_inputs;
        chain_inputs.push_back(claimed_output);
        result.record = chain.submit_report(round.aggregated, vk_digest,
                                            result.proof_bytes, chain_inputs,
                                            "don-ocr");
    } catch (const std::exception& e) {
        stage_fail("submit", e);
    }

    report.verified = result.record.verified;
    report.eth_fee_per_request = chain.fees().gas_price * chain.fees().gas_submit_report;
    result.ledger_export = chain.export_jsonl();
    result.oracle_audit = network.audit_log();
    return result;
}

// ---------------------------------------------------------------------------
// report serialization

namespace {
nlohmann::ordered_json timings_to_json(const StageTimings& t) {
    nlohmann::ordered_json j;
    j["compile"] = t.compile;
    j["witness"] = t.witness;
    j["pot"] = t.pot;
    j["ceremony"] = t.ceremony;
    j["phase2"] = t.phase2;
    j["zkey"] = t.zkey;
    j["proof"] = t.proof;
    j["verify"] = t.verify;
    j["oracle_overhead"] = t.oracle_overhead;
    j["ledger_overhead"] = t.ledger_overhead;
    j["total_generation"] = t.total_generation();
    return j;
}
}  // namespace

std::string report_to_json(const BenchReport& report) {
    nlohmann::ordered_json j;
    j["run_id"] = report.run_id;
    j["seed"] = report.seed;
    j["n_features"] = report.n_features;
    j["n_constraints"] = report.n_constraints;
    j["proof_bytes"] = report.proof_bytes;
    j["vk_bytes"] = report.vk_bytes;
    j["eth_fee_per_request"] = report.eth_fee_per_request.to_string();
    j["link_cost_per_request"] = report.link_cost_per_request.to_string();
    j["verified"] = report.verified;
    j["claimed_mse"] = report.claimed_mse;
    j["dataset_digest"] = report.dataset_digest;
    j["selected_features"] = report.selected_features;
    j["fault"] = report.fault;
    j["timings"] = timings_to_json(report.timings);
    return j.dump(2);
}

BenchReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedEncoding(std::string("bad report JSON: ") + e.what());
    }
    BenchReport r;
    try {
        r.run_id = j.at("run_id").get<std::string>();
        r.seed = j.at("seed").get<uint64_t>();
        r.n_features = j.at("n_features").get<size_t>();
        r.n_constraints = j.at("n_constraints").get<size_t>();
        r.proof_bytes = j.at("proof_bytes").get<size_t>();
        r.vk_bytes = j.at("vk_bytes").get<size_t>();
        r.eth_fee_per_request = Fixed18::parse(j.at("eth_fee_per_request").get<std::string>());
        r.link_cost_per_request = Fixed18::parse(j.at("link_cost_per_request").get<std::string>());
        r.verified = j.at("verified").get<bool>();
        r.claimed_mse = j.at("claimed_mse").get<double>();
        r.dataset_digest = j.at("dataset_digest").get<std::string>();
        r.selected_features = j.at("selected_features").get<std::vector<std::string>>();
        r.fault = j.at("fault").get<std::string>();
        const auto& tj = j.at("timings");
        r.timings.compile = tj.at("compile").get<double>();
        r.timings.witness = tj.at("witness").get<double>();
        r.timings.pot = tj.at("pot").get<double>();
        r.timings.ceremony = tj.at("ceremony").get<double>();
        r.timings.phase2 = tj.at("phase2").get<double>();
        r.timings.zkey = tj.at("zkey").get<double>();
        r.timings.proof = tj.at("proof").get<double>();
        r.timings.verify = tj.at("verify").get<double>();
        r.timings.oracle_overhead = tj.at("oracle_overhead").get<double>();
        r.timings.ledger_overhead = tj.at("ledger_overhead").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedEncoding(std::string("bad report JSON: ") + e.what());
    }
    return r;
}

std::string strip_timings(const std::string& report_json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(report_json);
    j.erase("timings");
    return j.dump(2);
}

std::vector<SweepEntry> bench_sweep(const PipelineConfig& base,
                                    const std::vector<std::size_t>& n_list) {
    std::vector<SweepEntry> entries;
    for (size_t n : n_list) {
        SweepEntry entry;
        entry.n = n;
        PipelineConfig config = base;
        config.n_features = n;
        try {
            entry.report = run_pipeline(config).report;
            entry.ok = true;
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

namespace {
std::string fmt_seconds(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}
}  // namespace

std::string sweep_to_csv(const std::vector<SweepEntry>& entries) {
    std::string out =
        "n,ok,proof_bytes,vk_bytes,compile_s,witness_s,pot_s,ceremony_s,phase2_s,"
        "zkey_s,proof_s,verify_s,oracle_s,ledger_s,total_generation_s,verified,error\n";
    for (const auto& e : entries) {
        const StageTimings& t = e.report.timings;
        out += std::to_string(e.n) + "," + (e.ok ? "1" : "0") + "," +
               std::to_string(e.report.proof_bytes) + "," +
               std::to_string(e.report.vk_bytes) + "," + fmt_seconds(t.compile) +
               "," + fmt_seconds(t.witness) + "," + fmt_seconds(t.pot) + "," +
               fmt_seconds(t.ceremony) + "," + fmt_seconds(t.phase2) + "," +
               fmt_seconds(t.zkey) + "," + fmt_seconds(t.proof) + "," +
               fmt_seconds(t.verify) + "," + fmt_seconds(t.oracle_overhead) + "," +
               fmt_seconds(t.ledger_overhead) + "," +
               fmt_seconds(t.total_generation()) + "," +
               (e.report.verified ? "1" : "0") + "," + e.error + "\n";
    }
    return out;
}

std::string sweep_to_json(const std::vector<SweepEntry>& entries) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json j;
        j["n"] = e.n;
        j["ok"] = e.ok;
        if (e.ok) {
            j["report"] = nlohmann::ordered_json::parse(report_to_json(e.report));
        } else {
            j["error"] = e.error;
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

namespace {

struct StageStats {
    std::string name;
    double mean = 0, lo = 0, hi = 0, stddev = 0;
};

std::vector<StageStats> summarize(const std::vector<BenchReport>& reports) {
    const std::vector<std::pair<std::string, double StageTimings::*>> stages = {
        {"compile", &StageTimings::compile},
        {"witness", &StageTimings::witness},
        {"pot", &StageTimings::pot},
        {"ceremony", &StageTimings::ceremony},
        {"phase2", &StageTimings::phase2},
        {"zkey", &StageTimings::zkey},
        {"proof", &StageTimings::proof},
        {"verify", &StageTimings::verify},
        {"oracle_overhead", &StageTimings::oracle_overhead},
        {"ledger_overhead", &StageTimings::ledger_overhead},
    };
    std::vector<StageStats> out;
    for (const auto& [name, member] : stages) {
        StageStats s;
        s.name = name;
        double sum = 0;
        s.lo = reports.front().timings.*member;
        s.hi = s.lo;
        for (const auto& r : reports) {
            double v = r.timings.*member;
            sum += v;
            s.lo = std::min(s.lo, v);
            s.hi = std::max(s.hi, v);
        }
        s.mean = sum / double(reports.size());
        double var = 0;
        for (const auto& r : reports) {
            double d = r.timings.*member - s.mean;
            var += d * d;
        }
        s.stddev = std::sqrt(var / double(reports.size()));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::string render_report(const std::vector<BenchReport>& reports,
                          const std::string& format) {
    if (reports.empty()) throw NothingToReport("no runs recorded yet");
    if (format != "json" && format != "csv" && format != "markdown")
        throw std::invalid_argument("unknown report format: " + format);

    std::vector<StageStats> stats = summarize(reports);
    if (format == "csv") {
        std::string out = "stage,mean_s,min_s,max_s,stddev_s\n";
        for (const auto& s : stats) {
            out += s.name + "," + fmt_seconds(s.mean) + "," + fmt_seconds(s.lo) +
                   "," + fmt_seconds(s.hi) + "," + fmt_seconds(s.stddev) + "\n";
        }
        return out;
    }
    if (format == "markdown") {
        std::string out = "| stage | mean (s) | min (s) | max (s) | stddev (s) |\n";
        out += "|---|---|---|---|---|\n";
        for (const auto& s : stats) {
            out += "| " + s.name + " | " + fmt_seconds(s.mean) + " | " +
                   fmt_seconds(s.lo) + " | " + fmt_seconds(s.hi) + " | " +
                   fmt_seconds(s.stddev) + " |\n";
        }
        return out;
    }
    // json: values share the CSV's fixed-precision string rendering so the
    // two formats agree byte-for-byte on every number
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& s : stats) {
        nlohmann::ordered_json j;
        j["stage"] = s.name;
        j["mean_s"] = fmt_seconds(s.mean);
        j["min_s"] = fmt_seconds(s.lo);
        j["max_s"] = fmt_seconds(s.hi);
        j["stddev_s"] = fmt_seconds(s.stddev);
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

}  // namespace zkai::pipeline
