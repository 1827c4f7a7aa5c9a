// zkai: train a linear metric model, compile it to a constraint system,
// run the ceremony/prove/verify loop, and exercise the simulated
// oracle-network + ledger verification round. Subcommands exchange
// artifacts through the --out directory.

#include <zkai/dataset.hpp>
#include <zkai/errors.hpp>
#include <zkai/ledger.hpp>
#include <zkai/model.hpp>
#include <zkai/oracle.hpp>
#include <zkai/pipeline.hpp>
#include <zkai/qap.hpp>
#include <zkai/rng.hpp>
#include <zkai/snark.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace zkai;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<uint8_t> read_bytes(const fs::path& path) {
    std::string text = read_file(path);
    return std::vector<uint8_t>(text.begin(), text.end());
}

void write_file(const fs::path& path, std::string_view contents) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out.write(contents.data(), (std::streamsize)contents.size());
}

void write_bytes(const fs::path& path, const std::vector<uint8_t>& bytes) {
    write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                      bytes.size()));
}

uint64_t seed_from_env_or(uint64_t fallback) {
    if (const char* env = std::getenv("ZKAI_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("ZKAI_SEED must be an integer");
        }
    }
    return fallback;
}

struct CommonOpts {
    std::string out_dir = "zkai_out";
    uint64_t seed = 0;
    bool seed_given = false;
    bool serial = false;

    uint64_t resolved_seed() const {
        return seed_given ? seed : seed_from_env_or(42);
    }
    ExecPolicy policy() const {
        return serial ? ExecPolicy::serial : ExecPolicy::parallel;
    }
    fs::path out(const std::string& name) const { return fs::path(out_dir) / name; }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out_dir, "artifact directory");
    cmd->add_option("--seed", opts.seed, "root RNG seed (overrides ZKAI_SEED)")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
    cmd->add_flag("--serial", opts.serial, "use the serial reference kernels");
}

// Rebuilds circuit and QAP from the saved model; every command that needs
// them derives from the same artifact so the views cannot drift.
struct CircuitContext {
    model::LinearModel trained;
    unsigned scale_bits = 16;
    model::QuantizedModel qmodel;
    circuit::R1CSSystem sys;
    qap::QapInstance qap;
};

CircuitContext load_circuit_context(const CommonOpts& opts, ExecPolicy policy) {
    CircuitContext ctx;
    ctx.trained = model::from_json(read_file(opts.out("model.json")), &ctx.scale_bits);
    ctx.qmodel = model::quantize(ctx.trained, ctx.scale_bits);
    ctx.sys = circuit::compile_linear((uint32_t)ctx.qmodel.n_features());
    ctx.qap = qap::r1cs_to_qap(ctx.sys, policy);
    return ctx;
}

int cmd_ingest(const CommonOpts& opts, const std::string& dataset,
               const std::string& target) {
    data::Dataset raw = data::load_csv(dataset, target);
    data::CleanResult cleaned = data::clean(raw);
    fs::create_directories(opts.out_dir);
    data::save_csv(cleaned.dataset, opts.out("cleaned.csv").string());

    nlohmann::ordered_json j;
    j["source"] = dataset;
    j["target"] = target;
    j["rows"] = cleaned.dataset.n_rows();
    j["rows_removed"] = cleaned.rows_removed;
    j["features"] = cleaned.dataset.feature_names;
    j["dropped_constant_features"] = cleaned.dropped_features;
    write_file(opts.out("ingest.json"), j.dump(2) + "\n");
    std::cout << "ingested " << cleaned.dataset.n_rows() << " rows, "
              << cleaned.dataset.n_features() << " features ("
              << cleaned.rows_removed << " rows removed)\n";
    return 0;
}

int cmd_analyze(const CommonOpts& opts, const std::string& target,
                double threshold, std::optional<size_t> top_n) {
    data::Dataset d = data::load_csv(opts.out("cleaned.csv").string(), target);
    data::CorrelationReport report = data::analyze(d, opts.policy());
    std::vector<std::string> selected =
        top_n ? data::select_top_features(report, *top_n)
              : data::select_features(report, threshold);

    nlohmann::ordered_json features = nlohmann::ordered_json::array();
    for (const auto& f : report.features) {
        nlohmann::ordered_json j;
        j["name"] = f.name;
        j["pearson_r"] = f.pearson_r;
        j["spearman_rho"] = f.spearman_rho;
        j["strength"] = f.strength();
        features.push_back(std::move(j));
    }
    nlohmann::ordered_json j;
    j["target"] = target;
    j["threshold"] = threshold;
    j["features"] = std::move(features);
    j["selected"] = selected;
    write_file(opts.out("correlations.json"), j.dump(2) + "\n");
    std::cout << "selected " << selected.size() << " of " << report.features.size()
              << " features\n";
    return selected.empty() ? 1 : 0;
}

int cmd_train(const CommonOpts& opts, const std::string& target,
              unsigned scale_bits, double train_fraction) {
    data::Dataset d = data::load_csv(opts.out("cleaned.csv").string(), target);
    nlohmann::json corr = nlohmann::json::parse(read_file(opts.out("correlations.json")));
    std::vector<std::string> selected =
        corr.at("selected").get<std::vector<std::string>>();
    if (selected.empty()) throw InsufficientData("no features selected");

    auto [working, scaler] = data::normalize(d.select(selected));
    size_t split = size_t(double(working.n_rows()) * train_fraction);
    split = std::min(std::max(split, working.n_features() + 1), working.n_rows() - 1);

    data::Dataset train = working, eval = working;
    train.rows.assign(working.rows.begin(), working.rows.begin() + (long)split);
    train.targets.assign(working.targets.begin(), working.targets.begin() + (long)split);
    eval.rows.assign(working.rows.begin() + (long)split, working.rows.end());
    eval.targets.assign(working.targets.begin() + (long)split, working.targets.end());

    model::LinearModel m = model::fit(train);
    m.scaler = scaler;
    model::EvaluationClaim claim = model::evaluate_mse(m, eval);
    write_file(opts.out("model.json"), model::to_json(m, scale_bits) + "\n");

    nlohmann::ordered_json cj;
    cj["dataset_digest"] = digest_hex(claim.dataset_digest);
    cj["mse"] = claim.mse;
    cj["mse_quantized"] = claim.mse_quantized.to_hex();
    cj["train_rows"] = train.n_rows();
    cj["eval_rows"] = eval.n_rows();
    write_file(opts.out("claim.json"), cj.dump(2) + "\n");
    std::cout << "trained " << m.n_features() << "-feature model, eval MSE "
              << claim.mse << "\n";
    return 0;
}

int cmd_compile(const CommonOpts& opts) {
    CircuitContext ctx = load_circuit_context(opts, opts.policy());
    write_file(opts.out("r1cs.txt"), circuit::dump_r1cs(ctx.sys));

    nlohmann::ordered_json j;
    j["n_features"] = ctx.qmodel.n_features();
    j["constraints"] = ctx.sys.constraints.size();
    j["instance_wires"] = ctx.sys.num_instance;
    j["witness_wires"] = ctx.sys.num_witness;
    j["gates"] = ctx.sys.gates.size();
    write_file(opts.out("circuit.json"), j.dump(2) + "\n");
    std::cout << "compiled " << ctx.qmodel.n_features() << " features into "
              << ctx.sys.constraints.size() << " constraints\n";
    return 0;
}

int cmd_setup(const CommonOpts& opts, size_t contributions) {
    CircuitContext ctx = load_circuit_context(opts, opts.policy());
    const size_t m = ctx.sys.constraints.size();
    snark::CeremonyResult ceremony = snark::run_ceremony(
        2 * m, contributions, SeedTree(opts.resolved_seed()).stream_seed("ceremony"),
        /*keep_trapdoor=*/false);
    snark::CommonReferenceString crs =
        snark::phase2_specialize(ceremony.accumulator, ctx.qap, opts.policy());

    write_bytes(opts.out("pk.bin"), snark::serialize_pk(crs.pk));
    write_bytes(opts.out("vk.bin"), snark::serialize_vk(crs.vk));

    nlohmann::ordered_json transcript = nlohmann::ordered_json::array();
    for (const auto& c : ceremony.accumulator.contributions)
        transcript.push_back(digest_hex(c.digest));
    nlohmann::ordered_json j;
    j["contributions"] = std::move(transcript);
    j["powers"] = ceremony.accumulator.powers.size();
    write_file(opts.out("ceremony.json"), j.dump(2) + "\n");
    std::cout << "setup with " << contributions << " contributions; vk "
              << fs::file_size(opts.out("vk.bin")) << " bytes\n";
    return 0;
}

int cmd_prove(const CommonOpts& opts, const std::string& target,
              std::optional<size_t> row_index) {
    CircuitContext ctx = load_circuit_context(opts, opts.policy());
    data::Dataset d = data::load_csv(opts.out("cleaned.csv").string(), target);

    size_t row = row_index.value_or(d.n_rows() - 1);
    if (row >= d.n_rows()) throw std::invalid_argument("row index out of range");
    std::vector<double> raw(ctx.qmodel.n_features());
    for (size_t j = 0; j < ctx.qmodel.n_features(); j++)
        raw[j] = d.rows[row][d.feature_index(ctx.qmodel.feature_names[j])];
    std::vector<double> scaled = ctx.trained.scaler.transform(raw);
    std::vector<Fp> xq;
    for (double v : scaled) xq.push_back(model::quantize_value(v, ctx.scale_bits));

    circuit::Witness w = circuit::generate_witness(ctx.sys, ctx.qmodel, xq);

    snark::CommonReferenceString crs;
    crs.pk = snark::deserialize_pk(read_bytes(opts.out("pk.bin")));
    crs.vk = snark::deserialize_vk(read_bytes(opts.out("vk.bin")));
    snark::SnarkProof proof =
        snark::prove(crs, ctx.qap, w,
                     SeedTree(opts.resolved_seed()).stream_seed("prove"),
                     opts.policy());
    write_bytes(opts.out("proof.bin"), snark::serialize_proof(proof));

    nlohmann::ordered_json j;
    j["row"] = row;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const auto& v : xq) inputs.push_back(v.to_hex());
    j["inputs"] = std::move(inputs);
    j["claimed_output"] = w.assignment[ctx.sys.output_wire()].to_hex();
    j["prediction"] =
        model::dequantize_value(w.assignment[ctx.sys.output_wire()], 2 * ctx.scale_bits);
    write_file(opts.out("public_inputs.json"), j.dump(2) + "\n");
    std::cout << "proof written (" << fs::file_size(opts.out("proof.bin"))
              << " bytes) for row " << row << "\n";
    return 0;
}

std::vector<Fp> load_public_inputs(const CommonOpts& opts, Fp* claimed_out) {
    nlohmann::json j = nlohmann::json::parse(read_file(opts.out("public_inputs.json")));
    std::vector<Fp> inputs;
    for (const auto& hex : j.at("inputs"))
        inputs.push_back(Fp::from_hex(hex.get<std::string>()));
    Fp claimed = Fp::from_hex(j.at("claimed_output").get<std::string>());
    if (claimed_out) *claimed_out = claimed;
    inputs.push_back(claimed);
    return inputs;
}

int cmd_verify(const CommonOpts& opts) {
    snark::VerificationKey vk = snark::deserialize_vk(read_bytes(opts.out("vk.bin")));
    snark::SnarkProof proof =
        snark::deserialize_proof(read_bytes(opts.out("proof.bin")));
    std::vector<Fp> inputs = load_public_inputs(opts, nullptr);
    bool ok = snark::verify(vk, inputs, proof);
    std::cout << (ok ? "verified: true" : "verified: false") << "\n";
    return ok ? 0 : 1;
}

// chain.json + subscriptions.json hold the simulated on-chain state
// between invocations.
struct ChainHandle {
    oracle::SubscriptionBook subs;
    std::unique_ptr<ledger::Ledger> chain;
};

ChainHandle load_chain(const CommonOpts& opts) {
    ChainHandle h;
    h.chain = std::make_unique<ledger::Ledger>(ledger::FeeSchedule{}, h.subs);
    if (fs::exists(opts.out("chain.json")))
        h.chain->restore_state_json(read_file(opts.out("chain.json")));
    if (fs::exists(opts.out("subscriptions.json")))
        h.subs.restore_state_json(read_file(opts.out("subscriptions.json")));
    return h;
}

void save_chain(const CommonOpts& opts, const ChainHandle& h) {
    write_file(opts.out("chain.json"), h.chain->to_state_json() + "\n");
    write_file(opts.out("subscriptions.json"), h.subs.to_state_json() + "\n");
    write_file(opts.out("ledger.jsonl"), h.chain->export_jsonl());
}

int cmd_deploy(const CommonOpts& opts, const std::string& sender) {
    ChainHandle h = load_chain(opts);
    Digest digest = h.chain->deploy_vk(sender, read_bytes(opts.out("vk.bin")));
    save_chain(opts, h);
    std::cout << "vk digest " << digest_hex(digest) << "\n";
    return 0;
}

int cmd_request(const CommonOpts& opts, const std::string& target, uint32_t nodes,
                const std::string& fund, int byzantine) {
    ChainHandle h = load_chain(opts);
    CircuitContext ctx = load_circuit_context(opts, opts.policy());

    std::vector<uint8_t> vk_bytes = read_bytes(opts.out("vk.bin"));
    Digest vk_digest = sha256(std::span<const uint8_t>(vk_bytes));
    if (!h.chain->vk_deployed(vk_digest))
        throw UnknownVerifier("run `zkai deploy` before `zkai request`");

    Fp claimed;
    nlohmann::json pij = nlohmann::json::parse(read_file(opts.out("public_inputs.json")));
    (void)load_public_inputs(opts, &claimed);
    size_t row = pij.at("row").get<size_t>();

    uint64_t sub_id = h.subs.create("model-buyer");
    h.chain->fund_subscription("model-buyer", sub_id, Fixed18::parse(fund));

    oracle::NetworkConfig config;
    config.n_nodes = nodes;
    ledger::Ledger* chain = h.chain.get();
    oracle::OracleNetwork network(
        config, h.subs, [chain](const Digest& d) { return chain->vk_deployed(d); },
        [chain](const Digest& d) { return chain->vk_bytes(d); });
    if (byzantine >= 0) network.set_fault((uint32_t)byzantine,
                                          oracle::NodeFault::flip_verdict);

    oracle::OracleRequest req;
    req.subscription_id = sub_id;
    req.requester = "model-buyer";
    req.task.vk_digest = vk_digest;
    req.task.proof_bytes = read_bytes(opts.out("proof.bin"));
    req.task.source = oracle::CsvSource{opts.out("cleaned.csv").string()};
    req.task.source_target_column = target;
    req.task.row_index = row;
    req.task.feature_names = ctx.qmodel.feature_names;
    req.task.scaler = ctx.trained.scaler;
    req.task.scale_bits = ctx.scale_bits;
    req.task.claimed_output = claimed;

    uint64_t id = network.submit_request(req);
    auto round = network.run_round(id, opts.policy());

    std::vector<Fp> chain_inputs = round.aggregated.aggregated_inputs;
    chain_inputs.push_back(claimed);
    const ledger::VerificationRecord& rec = h.chain->submit_report(
        round.aggregated, vk_digest, req.task.proof_bytes, chain_inputs, "don-ocr");
    save_chain(opts, h);

    std::string audit;
    for (const auto& line : network.audit_log()) audit += line + "\n";
    write_file(opts.out("oracle_audit.jsonl"), audit);

    std::cout << "request " << id << ": don=" << (round.aggregated.verified ? "true" : "false")
              << " ledger=" << (rec.verified ? "true" : "false") << " link_cost="
              << round.aggregated.total_link_cost.to_string() << "\n";
    return rec.verified ? 0 : 1;
}

pipeline::PipelineConfig make_pipeline_config(
    const CommonOpts& opts, const std::string& dataset, const std::string& target,
    double threshold, std::optional<size_t> features, unsigned scale_bits,
    uint32_t nodes, size_t contributions, const std::string& fault) {
    pipeline::PipelineConfig config;
    config.dataset_path = dataset;
    config.target_name = target;
    config.threshold = threshold;
    config.n_features = features;
    config.scale_bits = scale_bits;
    config.nodes = nodes;
    config.contributions = contributions;
    config.seed = opts.resolved_seed();
    config.fault = pipeline::fault_from_string(fault);
    config.policy = opts.policy();
    return config;
}

int cmd_pipeline(const CommonOpts& opts, const pipeline::PipelineConfig& config) {
    pipeline::PipelineResult result = pipeline::run_pipeline(config);
    std::string report_json = pipeline::report_to_json(result.report);
    write_file(opts.out("runs/run-" + result.report.run_id + ".json"),
               report_json + "\n");
    write_file(opts.out("ledger.jsonl"), result.ledger_export);
    std::string audit;
    for (const auto& line : result.oracle_audit) audit += line + "\n";
    write_file(opts.out("oracle_audit.jsonl"), audit);

    std::cout << report_json << "\n";
    std::cout << "pipeline " << (result.report.verified ? "verified" : "REJECTED")
              << " in " << result.report.timings.total_generation()
              << "s generation\n";
    return result.report.verified ? 0 : 1;
}

int cmd_bench(const CommonOpts& opts, pipeline::PipelineConfig base,
              const std::vector<size_t>& n_list, size_t repeats) {
    std::vector<pipeline::SweepEntry> all;
    for (size_t rep = 0; rep < repeats; rep++) {
        base.seed = opts.resolved_seed() + rep;
        auto entries = pipeline::bench_sweep(base, n_list);
        for (auto& e : entries) {
            if (e.ok)
                write_file(opts.out("runs/run-" + e.report.run_id + "-r" +
                                    std::to_string(rep) + ".json"),
                           pipeline::report_to_json(e.report) + "\n");
            all.push_back(std::move(e));
        }
    }
    write_file(opts.out("sweep.csv"), pipeline::sweep_to_csv(all));
    write_file(opts.out("sweep.json"), pipeline::sweep_to_json(all) + "\n");

    // succinctness check: proof bytes must not vary with model size
    size_t proof_len = 0;
    bool constant = true;
    for (const auto& e : all) {
        if (!e.ok) continue;
        if (proof_len == 0) proof_len = e.report.proof_bytes;
        constant = constant && e.report.proof_bytes == proof_len;
    }
    std::cout << pipeline::sweep_to_csv(all);
    if (!constant) {
        std::cerr << "error: proof size varies across model sizes\n";
        return 1;
    }
    for (const auto& e : all)
        if (!e.ok) std::cerr << "n=" << e.n << " failed: " << e.error << "\n";
    return 0;
}

int cmd_report(const CommonOpts& opts, const std::string& format) {
    std::vector<pipeline::BenchReport> reports;
    fs::path runs = opts.out("runs");
    if (fs::exists(runs)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(runs))
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
            reports.push_back(pipeline::report_from_json(read_file(f)));
    }
    std::cout << pipeline::render_report(reports, format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verifiable linear-model evaluation toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;

    std::string dataset = "data/btc_onchain_sample.csv";
    std::string target = "price";
    double threshold = 0.5;
    std::optional<size_t> features;
    unsigned scale_bits = 16;
    double train_fraction = 0.8;
    size_t contributions = 3;
    uint32_t nodes = 4;
    std::string fault = "none";
    std::string fund = "2";
    int byzantine = -1;
    std::optional<size_t> row;
    std::string sender = "model-developer";
    std::string n_list_text = "1,5,39";
    size_t repeats = 1;
    std::string format = "markdown";

    auto* ingest = app.add_subcommand("ingest", "load and clean a metric dataset");
    ingest->add_option("--dataset", dataset, "input CSV")->required();
    ingest->add_option("--target", target, "target column");
    add_common(ingest, opts);

    auto* analyze = app.add_subcommand("analyze", "correlation analysis and feature selection");
    analyze->add_option("--target", target, "target column");
    analyze->add_option("--threshold", threshold, "selection cutoff in [0,1]");
    analyze->add_option("--features", features, "select the strongest N instead");
    add_common(analyze, opts);

    auto* train = app.add_subcommand("train", "fit the linear model and record its claim");
    train->add_option("--target", target, "target column");
    train->add_option("--scale-bits", scale_bits, "fixed-point scale");
    train->add_option("--split", train_fraction, "train fraction of the time-ordered split");
    add_common(train, opts);

    auto* compile = app.add_subcommand("compile", "compile the model to a constraint system");
    add_common(compile, opts);

    auto* setup = app.add_subcommand("setup", "multi-party ceremony and key generation");
    setup->add_option("--contributions", contributions, "ceremony participants");
    add_common(setup, opts);

    auto* prove = app.add_subcommand("prove", "generate a proof for one inference");
    prove->add_option("--target", target, "target column");
    prove->add_option("--row", row, "dataset row to prove (default: last)");
    add_common(prove, opts);

    auto* verify = app.add_subcommand("verify", "check a proof against the saved statement");
    add_common(verify, opts);

    auto* deploy = app.add_subcommand("deploy", "register the verification key on the simulated chain");
    deploy->add_option("--sender", sender, "deploying account");
    add_common(deploy, opts);

    auto* request = app.add_subcommand("request", "run a decentralized verification round");
    request->add_option("--target", target, "target column");
    request->add_option("--nodes", nodes, "oracle network size");
    request->add_option("--fund", fund, "LINK to fund the subscription");
    request->add_option("--byzantine", byzantine, "inject a verdict-flipping node");
    add_common(request, opts);

    auto* pipe = app.add_subcommand("pipeline", "full flow: ingest through on-chain verification");
    pipe->add_option("--dataset", dataset, "input CSV");
    pipe->add_option("--target", target, "target column");
    pipe->add_option("--threshold", threshold, "selection cutoff");
    pipe->add_option("--features", features, "select the strongest N instead");
    pipe->add_option("--scale-bits", scale_bits, "fixed-point scale");
    pipe->add_option("--nodes", nodes, "oracle network size");
    pipe->add_option("--contributions", contributions, "ceremony participants");
    pipe->add_option("--fault", fault,
                     "inject a fault: tamper-proof|tamper-witness|"
                     "tamper-public-input|byzantine-node");
    add_common(pipe, opts);

    auto* bench = app.add_subcommand("bench", "pipeline sweep over model sizes");
    bench->add_option("--dataset", dataset, "input CSV");
    bench->add_option("--target", target, "target column");
    bench->add_option("--n-list", n_list_text, "comma-separated model sizes");
    bench->add_option("--repeats", repeats, "runs per size");
    bench->add_option("--nodes", nodes, "oracle network size");
    bench->add_option("--contributions", contributions, "ceremony participants");
    add_common(bench, opts);

    auto* report = app.add_subcommand("report", "summarize recorded runs");
    report->add_option("--format", format, "json|csv|markdown");
    add_common(report, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) return cmd_ingest(opts, dataset, target);
        if (analyze->parsed()) return cmd_analyze(opts, target, threshold, features);
        if (train->parsed()) return cmd_train(opts, target, scale_bits, train_fraction);
        if (compile->parsed()) return cmd_compile(opts);
        if (setup->parsed()) return cmd_setup(opts, contributions);
        if (prove->parsed()) return cmd_prove(opts, target, row);
        if (verify->parsed()) return cmd_verify(opts);
        if (deploy->parsed()) return cmd_deploy(opts, sender);
        if (request->parsed())
            return cmd_request(opts, target, nodes, fund, byzantine);
        if (pipe->parsed()) {
            return cmd_pipeline(opts, make_pipeline_config(
                                          opts, dataset, target, threshold, features,
                                          scale_bits, nodes, contributions, fault));
        }
        if (bench->parsed()) {
            std::vector<size_t> n_list;
            std::stringstream ss(n_list_text);
            std::string tok;
            while (std::getline(ss, tok, ',')) n_list.push_back(std::stoul(tok));
            if (n_list.empty()) throw std::invalid_argument("--n-list is empty");
            return cmd_bench(opts,
                             make_pipeline_config(opts, dataset, target, threshold,
                                                  std::nullopt, scale_bits, nodes,
                                                  contributions, "none"),
                             n_list, repeats);
        }
        if (report->parsed()) return cmd_report(opts, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
