#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <zkai/circuit.hpp>
#include <zkai/rng.hpp>

#include "test_helpers.hpp"

#include <random>
#include <set>

using namespace zkai;
using namespace zkai::circuit;

namespace {

// Walks the emitted gate list: every multiplication gate compiles to one
// constraint and the folded additions contribute exactly one more.
size_t constraint_count_oracle(const R1CSSystem& sys) {
    size_t muls = 0;
    for (const auto& g : sys.gates)
        if (g.kind == Gate::Kind::mul) muls++;
    return muls + 1;
}

// Brute-force per-constraint evaluator independent of eval_row.
bool check_oracle(const R1CSSystem& sys, const std::vector<Fp>& z) {
    for (const auto& c : sys.constraints) {
        Fp a, b, cc;
        for (const auto& [w, k] : c.a) a += k * z[w];
        for (const auto& [w, k] : c.b) b += k * z[w];
        for (const auto& [w, k] : c.c) cc += k * z[w];
        if (a * b != cc) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("compile_linear emits n+1 constraints and the expected wires") {
    R1CSSystem sys = compile_linear(1);
    CHECK(sys.constraints.size() == 2);
    CHECK(sys.num_instance == 3);  // one, x1, y
    CHECK(sys.num_witness == 3);   // intercept, a1, prod1

    CHECK(compile_linear(2).constraints.size() == 3);

    R1CSSystem big = compile_linear(39);
    CHECK(big.constraints.size() == 40);
    CHECK(big.constraints.size() == constraint_count_oracle(big));
}

TEST_CASE("gate list is topological with single-assignment outputs") {
    R1CSSystem sys = compile_linear(5);
    std::set<uint32_t> defined;
    for (uint32_t w = 0; w < sys.num_wires(); w++) {
        if (w < sys.num_instance && w != sys.output_wire()) defined.insert(w);
    }
    defined.insert(sys.intercept_wire());
    for (uint32_t i = 0; i < 5; i++) defined.insert(sys.weight_wire(i));

    for (const auto& g : sys.gates) {
        CHECK(defined.count(g.left));
        CHECK(defined.count(g.right));
        CHECK(!defined.count(g.out));  // written exactly once
        defined.insert(g.out);
    }
    CHECK(defined.count(sys.output_wire()));
}

TEST_CASE("witness generation follows the product-scale law") {
    // weights [0], intercept 7: output is the intercept at product scale
    model::LinearModel zero;
    zero.weights = {0.0};
    zero.intercept = 7.0;
    zero.feature_names = {"a"};
    model::QuantizedModel q = model::quantize(zero, 16);
    R1CSSystem sys = compile_linear(1);
    Witness w = generate_witness(sys, q, {model::quantize_value(0.5, 16)});
    CHECK(w.assignment[sys.output_wire()] == Fp(7) * Fp::two_pow(32));
    CHECK(check_r1cs(sys, w));

    // weights [1,1], intercept 0, x = [2,3]: output 5 * 2^32
    model::LinearModel ones;
    ones.weights = {1.0, 1.0};
    ones.intercept = 0.0;
    ones.feature_names = {"a", "b"};
    model::QuantizedModel q2 = model::quantize(ones, 16);
    R1CSSystem sys2 = compile_linear(2);
    Witness w2 = generate_witness(
        sys2, q2, {model::quantize_value(2.0, 16), model::quantize_value(3.0, 16)});
    CHECK(w2.assignment[sys2.output_wire()] == Fp(5) * Fp::two_pow(32));
    CHECK(check_r1cs(sys2, w2));
}

TEST_CASE("witness output decodes to the model prediction") {
    std::mt19937_64 rng(0xb0);
    for (int trial = 0; trial < 20; trial++) {
        model::LinearModel m;
        std::vector<double> x;
        for (int j = 0; j < 6; j++) {
            m.weights.push_back(random_unit(rng) * 2 - 1);
            m.feature_names.push_back("f");
            x.push_back(random_unit(rng));
        }
        m.intercept = random_unit(rng) - 0.5;
        model::QuantizedModel q = model::quantize(m, 16);
        R1CSSystem sys = compile_linear(6);
        std::vector<Fp> xq;
        for (double v : x) xq.push_back(model::quantize_value(v, 16));
        Witness w = generate_witness(sys, q, xq);
        double decoded =
            model::dequantize_value(w.assignment[sys.output_wire()], 32);
        CHECK(decoded == doctest::Approx(model::predict(m, x)).epsilon(1e-3));
    }
}

TEST_CASE("generate_witness validates dimensions") {
    R1CSSystem sys = compile_linear(2);
    model::LinearModel m;
    m.weights = {1.0};
    m.intercept = 0.0;
    m.feature_names = {"a"};
    model::QuantizedModel q = model::quantize(m, 16);
    CHECK_THROWS_AS(generate_witness(sys, q, {Fp(1), Fp(2)}), DimensionError);
    CHECK_THROWS_AS(generate_witness(sys, q, {Fp(1)}), DimensionError);
}

TEST_CASE("check_r1cs accepts honest witnesses, rejects perturbations") {
    std::mt19937_64 rng(0xb1);
    for (int trial = 0; trial < 50; trial++) {
        size_t n = 1 + random_below(rng, 6);
        model::QuantizedModel q = test::random_quantized_model(rng, n);
        R1CSSystem sys = compile_linear((uint32_t)n);
        Witness w =
            generate_witness(sys, q, test::random_quantized_inputs(rng, n));
        CHECK(check_r1cs(sys, w));
        CHECK(check_oracle(sys, w.assignment));

        // any single perturbed weight or product wire breaks a constraint
        Witness bad = w;
        uint32_t victim =
            sys.num_instance + (uint32_t)random_below(rng, sys.num_witness);
        bad.assignment[victim] += Fp::one();
        CHECK_FALSE(check_r1cs(sys, bad));
        CHECK_FALSE(check_oracle(sys, bad.assignment));
    }
}

TEST_CASE("check_r1cs agrees with the brute-force evaluator on random assignments") {
    std::mt19937_64 rng(0xb2);
    R1CSSystem sys = compile_linear(3);
    for (int trial = 0; trial < 100; trial++) {
        Witness w;
        w.assignment.resize(sys.num_wires());
        for (auto& v : w.assignment) v = Fp(random_below(rng, 16));
        w.assignment[0] = Fp::one();
        CHECK(check_r1cs(sys, w) == check_oracle(sys, w.assignment));
    }
}

TEST_CASE("check_r1cs validates assignment length") {
    R1CSSystem sys = compile_linear(1);
    Witness w;
    w.assignment.assign(3, Fp::one());
    CHECK_THROWS_AS(check_r1cs(sys, w), DimensionError);
}

TEST_CASE("r1cs dump golden for n=1") {
    R1CSSystem sys = compile_linear(1);
    const std::string one =
        "0000000000000000000000000000000000000000000000000000000000000001";
    std::string expected =
        "4:" + one + " | 1:" + one + " | 5:" + one + "\n" +   // a1 * x1 = prod1
        "3:" + one + ",5:" + one + " | 0:" + one + " | 2:" + one + "\n";
    CHECK(dump_r1cs(sys) == expected);
}

TEST_CASE("public_inputs_of returns instance wires minus the constant") {
    model::LinearModel m;
    m.weights = {1.0};
    m.intercept = 0.0;
    m.feature_names = {"a"};
    model::QuantizedModel q = model::quantize(m, 16);
    R1CSSystem sys = compile_linear(1);
    Fp x = model::quantize_value(0.25, 16);
    Witness w = generate_witness(sys, q, {x});
    std::vector<Fp> pub = public_inputs_of(sys, w);
    REQUIRE(pub.size() == 2);
    CHECK(pub[0] == x);
    CHECK(pub[1] == w.assignment[sys.output_wire()]);
}
