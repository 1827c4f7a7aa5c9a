#pragma once

#include <zkai/circuit.hpp>
#include <zkai/dataset.hpp>
#include <zkai/exec.hpp>
#include <zkai/fixed18.hpp>
#include <zkai/ledger.hpp>
#include <zkai/model.hpp>
#include <zkai/oracle.hpp>
#include <zkai/snark.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zkai::pipeline {

// Wall-clock seconds per stage of the end-to-end flow. Reported, never
// asserted against fixed targets; hardware decides the values.
struct StageTimings {
    double compile = 0;
    double witness = 0;
    double pot = 0;
    double ceremony = 0;
    double phase2 = 0;
    double zkey = 0;
    double proof = 0;
    double verify = 0;
    double oracle_overhead = 0;
    double ledger_overhead = 0;

    double total_generation() const {
        return compile + witness + pot + ceremony + phase2 + zkey + proof;
    }
};

enum class FaultKind {
    none,
    tamper_proof,         // corrupt serialized proof bytes in transit
    tamper_witness,       // perturb a witness wire before proving
    tamper_public_input,  // alter the claimed output sent for verification
    byzantine_node,       // one oracle node reports a flipped verdict
};

FaultKind fault_from_string(const std::string& name);  // usage error on unknown
std::string fault_to_string(FaultKind fault);

struct PipelineConfig {
    std::string dataset_path;
    std::string target_name = "price";
    double threshold = 0.5;                 // correlation cutoff
    std::optional<std::size_t> n_features;  // overrides threshold with top-N
    unsigned scale_bits = 16;
    uint32_t nodes = 4;
    std::size_t contributions = 3;
    uint64_t seed = 42;
    FaultKind fault = FaultKind::none;
    double train_fraction = 0.8;  // time-ordered split point
    ExecPolicy policy = ExecPolicy::parallel;
};

struct BenchReport {
    std::string run_id;  // derived from seed + configuration, not the clock
    uint64_t seed = 0;
    std::size_t n_features = 0;
    std::size_t n_constraints = 0;
    StageTimings timings;
    std::size_t proof_bytes = 0;
    std::size_t vk_bytes = 0;
    Fixed18 eth_fee_per_request;
    Fixed18 link_cost_per_request;
    bool verified = false;  // the ledger's verdict
    double claimed_mse = 0.0;
    std::string dataset_digest;
    std::vector<std::string> selected_features;
    std::string fault;
};

struct PipelineResult {
    BenchReport report;
    model::LinearModel trained;
    model::EvaluationClaim claim;
    std::vector<Fp> public_inputs;  // x wires then output wire
    std::vector<uint8_t> proof_bytes;
    std::vector<uint8_t> vk_bytes;
    oracle::AggregatedReport aggregated;
    ledger::VerificationRecord record;
    std::string ledger_export;
    std::vector<std::string> oracle_audit;
};

// Runs ingest -> analyze -> train -> quantize -> compile -> ceremony ->
// prove -> deploy -> oracle round -> on-chain verification, with stage
// timing instrumentation. Errors from any stage propagate with the stage
// name prefixed.
PipelineResult run_pipeline(const PipelineConfig& config);

// Report serialization. Timing fields live under a single "timings" key
// so deterministic comparisons can drop them wholesale.
std::string report_to_json(const BenchReport& report);
BenchReport report_from_json(const std::string& text);
std::string strip_timings(const std::string& report_json);

// Sweep over model sizes: one pipeline run per n (top-N feature
// selection), per-run failures recorded without aborting the sweep.
struct SweepEntry {
    std::size_t n = 0;
    bool ok = false;
    std::string error;
    BenchReport report;
};
std::vector<SweepEntry> bench_sweep(const PipelineConfig& base,
                                    const std::vector<std::size_t>& n_list);
std::string sweep_to_csv(const std::vector<SweepEntry>& entries);
std::string sweep_to_json(const std::vector<SweepEntry>& entries);

// Distribution summary (mean/min/max/stddev per stage) over saved runs.
// Values are rendered through one fixed-precision formatter in every
// output format. Throws NothingToReport when `reports` is empty and a
// usage error on an unknown format name.
std::string render_report(const std::vector<BenchReport>& reports,
                          const std::string& format);  // json|csv|markdown

}  // namespace zkai::pipeline
