#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <zkai/model.hpp>
#include <zkai/rng.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace zkai;
using namespace zkai::model;

namespace {

data::Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                           const std::vector<double>& targets) {
    data::Dataset d;
    for (size_t j = 0; j < rows[0].size(); j++)
        d.feature_names.push_back("f" + std::to_string(j));
    d.target_name = "y";
    d.rows = rows;
    d.targets = targets;
    return d;
}

// Independent least-squares route: Eigen's dense solver on the explicit
// normal equations.
std::vector<double> ols_oracle(const data::Dataset& d) {
    const size_t n = d.n_rows(), k = d.n_features();
    Eigen::MatrixXd X(n, k + 1);
    Eigen::VectorXd y(n);
    for (size_t i = 0; i < n; i++) {
        X(i, 0) = 1.0;
        for (size_t j = 0; j < k; j++) X(i, j + 1) = d.rows[i][j];
        y(i) = d.targets[i];
    }
    Eigen::VectorXd beta =
        (X.transpose() * X).colPivHouseholderQr().solve(X.transpose() * y);
    return std::vector<double>(beta.data(), beta.data() + beta.size());
}

}  // namespace

TEST_CASE("fit recovers an exact linear relation") {
    std::vector<std::vector<double>> rows;
    std::vector<double> targets;
    for (int i = 0; i < 10; i++) {
        double x = double(i) / 10.0;
        rows.push_back({x});
        targets.push_back(2 * x + 1);
    }
    LinearModel m = fit(make_dataset(rows, targets));
    CHECK(m.weights[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(m.intercept == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fit rejects duplicated feature columns") {
    std::vector<std::vector<double>> rows;
    std::vector<double> targets;
    for (int i = 0; i < 12; i++) {
        double x = double(i);
        rows.push_back({x, x});
        targets.push_back(3 * x);
    }
    CHECK_THROWS_AS(fit(make_dataset(rows, targets)), SingularDesign);
}

TEST_CASE("fit matches the normal-equations oracle on random systems") {
    std::mt19937_64 rng(0xa0);
    for (int trial = 0; trial < 20; trial++) {
        std::vector<std::vector<double>> rows;
        std::vector<double> targets;
        for (int i = 0; i < 20; i++) {
            rows.push_back({random_unit(rng), random_unit(rng), random_unit(rng)});
            targets.push_back(random_unit(rng) * 10);
        }
        data::Dataset d = make_dataset(rows, targets);
        LinearModel m = fit(d);
        std::vector<double> expected = ols_oracle(d);
        CHECK(m.intercept == doctest::Approx(expected[0]).epsilon(1e-8));
        for (size_t j = 0; j < 3; j++)
            CHECK(m.weights[j] == doctest::Approx(expected[j + 1]).epsilon(1e-8));
    }
}

TEST_CASE("fit needs more rows than features") {
    CHECK_THROWS_AS(fit(make_dataset({{1, 2}}, {1})), InsufficientData);
}

TEST_CASE("predict basics") {
    LinearModel m;
    m.weights = {0.0};
    m.intercept = 7.0;
    m.feature_names = {"a"};
    CHECK(predict(m, {123.0}) == doctest::Approx(7.0));

    m.weights = {1.0, 1.0};
    m.intercept = 0.0;
    m.feature_names = {"a", "b"};
    CHECK(predict(m, {2.0, 3.0}) == doctest::Approx(5.0));
    CHECK_THROWS_AS(predict(m, {1.0}), DimensionError);
}

TEST_CASE("predict matches explicit loop on random models") {
    std::mt19937_64 rng(0xa1);
    for (int trial = 0; trial < 50; trial++) {
        LinearModel m;
        std::vector<double> x;
        for (int j = 0; j < 8; j++) {
            m.weights.push_back(random_unit(rng) * 4 - 2);
            m.feature_names.push_back("f");
            x.push_back(random_unit(rng) * 4 - 2);
        }
        m.intercept = random_unit(rng);
        double expected = m.intercept;
        for (int j = 0; j < 8; j++) expected += m.weights[j] * x[j];
        CHECK(predict(m, x) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("predict is linear for zero-intercept models") {
    std::mt19937_64 rng(0xa2);
    LinearModel m;
    for (int j = 0; j < 5; j++) {
        m.weights.push_back(random_unit(rng) * 2 - 1);
        m.feature_names.push_back("f");
    }
    m.intercept = 0.0;
    for (int trial = 0; trial < 20; trial++) {
        std::vector<double> x1(5), x2(5), sum(5);
        for (int j = 0; j < 5; j++) {
            x1[j] = random_unit(rng);
            x2[j] = random_unit(rng);
            sum[j] = x1[j] + x2[j];
        }
        CHECK(predict(m, sum) ==
              doctest::Approx(predict(m, x1) + predict(m, x2)).epsilon(1e-12));
    }
}

TEST_CASE("evaluate_mse basics and digest binding") {
    LinearModel exact;
    exact.weights = {2.0};
    exact.intercept = 1.0;
    exact.feature_names = {"a"};
    data::Dataset d = make_dataset({{0.0}, {1.0}}, {1.0, 3.0});
    EvaluationClaim claim = evaluate_mse(exact, d);
    CHECK(claim.mse == doctest::Approx(0.0));

    LinearModel zero;
    zero.weights = {0.0};
    zero.intercept = 0.0;
    zero.feature_names = {"a"};
    data::Dataset ones = make_dataset({{5.0}, {6.0}}, {1.0, 1.0});
    CHECK(evaluate_mse(zero, ones).mse == doctest::Approx(1.0));

    // digest binds to the dataset content
    data::Dataset ones2 = ones;
    ones2.targets[1] = 2.0;
    CHECK(evaluate_mse(zero, ones).dataset_digest !=
          evaluate_mse(zero, ones2).dataset_digest);

    data::Dataset empty = ones;
    empty.rows.clear();
    empty.targets.clear();
    CHECK_THROWS_AS(evaluate_mse(zero, empty), InsufficientData);
}

TEST_CASE("evaluate_mse matches loop oracle") {
    std::mt19937_64 rng(0xa3);
    for (int trial = 0; trial < 20; trial++) {
        LinearModel m;
        m.weights = {random_unit(rng), random_unit(rng)};
        m.intercept = random_unit(rng);
        m.feature_names = {"a", "b"};
        std::vector<std::vector<double>> rows;
        std::vector<double> targets;
        double expected = 0;
        for (int i = 0; i < 15; i++) {
            rows.push_back({random_unit(rng), random_unit(rng)});
            targets.push_back(random_unit(rng) * 3);
        }
        data::Dataset d = make_dataset(rows, targets);
        for (int i = 0; i < 15; i++) {
            double e = m.intercept + m.weights[0] * rows[i][0] +
                       m.weights[1] * rows[i][1] - targets[i];
            expected += e * e;
        }
        expected /= 15.0;
        CHECK(evaluate_mse(m, d).mse == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("quantize: scale encoding and negation") {
    CHECK(quantize_value(1.0, 16) == Fp(65536));
    // -0.5 encodes as p - 32768
    Fp expected = Fp::from_u256(u256_sub(Fp::MODULUS, U256(32768)));
    CHECK(quantize_value(-0.5, 16) == expected);
    CHECK(dequantize_value(quantize_value(-0.5, 16), 16) == doctest::Approx(-0.5));
}

TEST_CASE("quantize rejects out-of-range input") {
    CHECK_THROWS_AS(quantize_value(double(1ull << 31), 16), QuantizationOverflow);
    CHECK_THROWS_AS(quantize_value(std::nan(""), 16), QuantizationOverflow);
    CHECK_THROWS_AS(quantize_value(1.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(quantize_value(1.0, 33), std::invalid_argument);
}

TEST_CASE("quantize round-trips within half a step") {
    std::mt19937_64 rng(0xa4);
    for (int i = 0; i < 1000; i++) {
        double v = (random_unit(rng) - 0.5) * 1000.0;
        double back = dequantize_value(quantize_value(v, 16), 16);
        CHECK(std::fabs(back - v) <= std::ldexp(1.0, -16));
    }
}

TEST_CASE("quantized model mirrors its source") {
    LinearModel m;
    m.weights = {0.25, -1.5};
    m.intercept = 0.125;
    m.feature_names = {"a", "b"};
    QuantizedModel q = quantize(m, 16);
    CHECK(q.weights[0] == Fp(16384));
    CHECK(dequantize_value(q.weights[1], 16) == doctest::Approx(-1.5));
    CHECK(q.intercept == Fp(8192));
    CHECK(q.scale_bits == 16);
}

TEST_CASE("model JSON round-trip") {
    LinearModel m;
    m.weights = {0.123456789123, -2.5};
    m.intercept = 41.25;
    m.feature_names = {"hash_rate", "tx_count"};
    m.scaler.names = m.feature_names;
    m.scaler.mins = {1.0, 10.0};
    m.scaler.maxs = {2.0, 90.0};

    unsigned scale_bits = 0;
    LinearModel back = from_json(to_json(m, 16), &scale_bits);
    CHECK(scale_bits == 16);
    CHECK(back.weights == m.weights);
    CHECK(back.intercept == m.intercept);
    CHECK(back.feature_names == m.feature_names);
    CHECK(back.scaler.mins == m.scaler.mins);
    CHECK(back.scaler.maxs == m.scaler.maxs);

    CHECK_THROWS_AS(from_json("{not json", nullptr), MalformedEncoding);
    CHECK_THROWS_AS(from_json("{\"weights\":[1]}", nullptr), MalformedEncoding);
}
