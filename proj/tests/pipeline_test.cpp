#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <zkai/pipeline.hpp>

#include "test_helpers.hpp"

#include <string>

using namespace zkai;
using namespace zkai::pipeline;

namespace {

std::string sample_csv() {
    return std::string(ZKAI_SOURCE_DIR) + "/data/btc_onchain_sample.csv";
}

PipelineConfig base_config(uint64_t seed = 42) {
    PipelineConfig config;
    config.dataset_path = sample_csv();
    config.n_features = 3;
    config.seed = seed;
    return config;
}

}  // namespace

TEST_CASE("honest pipeline verifies end to end") {
    PipelineResult result = run_pipeline(base_config());
    CHECK(result.report.verified);
    CHECK(result.record.verified);
    CHECK(result.aggregated.verified);
    CHECK(result.report.n_features == 3);
    CHECK(result.report.n_constraints == 4);
    CHECK(result.report.proof_bytes == result.proof_bytes.size());
    CHECK(result.report.vk_bytes == result.vk_bytes.size());
    CHECK(result.report.eth_fee_per_request == Fixed18::parse("0.000572"));
    CHECK(result.report.link_cost_per_request == Fixed18::parse("0.30"));
    CHECK_FALSE(result.report.selected_features.empty());
    CHECK_FALSE(result.ledger_export.empty());
}

TEST_CASE("threshold-based selection also flows through") {
    PipelineConfig config = base_config();
    config.n_features.reset();
    config.threshold = 0.9;  // keeps a handful of strong features
    PipelineResult result = run_pipeline(config);
    CHECK(result.report.verified);
    CHECK(result.report.n_features >= 1);
}

TEST_CASE("each injected fault lands per its semantics") {
    for (FaultKind fault : {FaultKind::tamper_proof, FaultKind::tamper_witness,
                            FaultKind::tamper_public_input}) {
        PipelineConfig config = base_config();
        config.fault = fault;
        PipelineResult result = run_pipeline(config);
        CHECK_FALSE(result.report.verified);
        CHECK(result.report.fault == fault_to_string(fault));
    }

    // a byzantine minority cannot flip the outcome
    PipelineConfig config = base_config();
    config.fault = FaultKind::byzantine_node;
    PipelineResult result = run_pipeline(config);
    CHECK(result.report.verified);
}

TEST_CASE("fault names parse and unknown names are usage errors") {
    CHECK(fault_from_string("tamper-proof") == FaultKind::tamper_proof);
    CHECK(fault_from_string("none") == FaultKind::none);
    CHECK(fault_from_string("") == FaultKind::none);
    CHECK_THROWS_AS(fault_from_string("melt-cpu"), std::invalid_argument);
}

TEST_CASE("same seed reproduces all non-timing report bytes") {
    std::string a = strip_timings(report_to_json(run_pipeline(base_config(77)).report));
    std::string b = strip_timings(report_to_json(run_pipeline(base_config(77)).report));
    CHECK(a == b);

    std::string c = strip_timings(report_to_json(run_pipeline(base_config(78)).report));
    CHECK(a != c);  // the seed is actually load-bearing
}

TEST_CASE("report JSON round-trips") {
    BenchReport report = run_pipeline(base_config()).report;
    BenchReport back = report_from_json(report_to_json(report));
    CHECK(report_to_json(back) == report_to_json(report));
}

TEST_CASE("bench_sweep keeps proof size constant and vk growing") {
    PipelineConfig config = base_config();
    config.n_features.reset();
    auto entries = bench_sweep(config, {1, 2, 4});
    REQUIRE(entries.size() == 3);
    for (const auto& e : entries) {
        REQUIRE(e.ok);
        CHECK(e.report.verified);
    }
    CHECK(entries[0].report.proof_bytes == entries[1].report.proof_bytes);
    CHECK(entries[1].report.proof_bytes == entries[2].report.proof_bytes);
    CHECK(entries[0].report.vk_bytes < entries[1].report.vk_bytes);
    CHECK(entries[1].report.vk_bytes < entries[2].report.vk_bytes);

    std::string csv = sweep_to_csv(entries);
    CHECK(csv.find("\n1,1,") != std::string::npos);
    std::string json = sweep_to_json(entries);
    CHECK(json.find("\"n\": 1") != std::string::npos);
}

TEST_CASE("sweep records per-run failures without aborting") {
    PipelineConfig config = base_config();
    config.dataset_path = "/nonexistent.csv";
    auto entries = bench_sweep(config, {1, 2});
    REQUIRE(entries.size() == 2);
    CHECK_FALSE(entries[0].ok);
    CHECK_FALSE(entries[1].ok);
    CHECK(entries[0].error.find("ingest") != std::string::npos);
}

TEST_CASE("render_report formats and cross-format equality") {
    std::vector<BenchReport> reports = {run_pipeline(base_config()).report};
    std::string csv = render_report(reports, "csv");
    std::string json = render_report(reports, "json");
    std::string md = render_report(reports, "markdown");
    CHECK(csv.find("stage,mean_s") == 0);
    CHECK(md.find("| stage |") == 0);

    // every numeric string in the CSV appears verbatim in the JSON
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        size_t comma = line.find(',');
        std::string rest = line.substr(comma + 1);
        std::istringstream cells(rest);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            CHECK(json.find('"' + cell + '"') != std::string::npos);
        }
    }

    CHECK_THROWS_AS(render_report({}, "csv"), NothingToReport);
    CHECK_THROWS_AS(render_report(reports, "yaml"), std::invalid_argument);
}

TEST_CASE("stage errors carry the stage name") {
    PipelineConfig config = base_config();
    config.dataset_path = "/does/not/exist.csv";
    try {
        run_pipeline(config);
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("stage 'ingest'") != std::string::npos);
    }
}

TEST_CASE("phase2 work grows with model size") {
    // median of 5 repeats at two well-separated sizes; the n^3 kernel gap
    // (2 vs 24 features) dwarfs scheduler noise
    auto median_phase2 = [](size_t n) {
        std::vector<double> samples;
        for (int rep = 0; rep < 5; rep++) {
            PipelineConfig config;
            config.dataset_path = sample_csv();
            config.n_features = n;
            config.seed = 1000 + uint64_t(rep);
            samples.push_back(run_pipeline(config).report.timings.phase2);
        }
        std::sort(samples.begin(), samples.end());
        return samples[2];
    };
    CHECK(median_phase2(24) > median_phase2(2));
}
