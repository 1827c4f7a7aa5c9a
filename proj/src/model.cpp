#include <zkai/model.hpp>

#include <zkai/errors.hpp>

#include <json.hpp>

#include <cfenv>
#include <cmath>
#include <cstdlib>

namespace zkai::model {

namespace {

// Partial-pivot Gaussian elimination on the (k+1)x(k+1) normal system.
std::vector<double> solve_linear_system(std::vector<std::vector<double>> a,
                                        std::vector<double> b) {
    const size_t n = b.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::fabs(v));
    const double tiny = scale * 1e-12;

    for (size_t col = 0; col < n; col++) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; r++) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        if (std::fabs(a[pivot][col]) <= tiny)
            throw SingularDesign("design matrix is rank deficient");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);

        for (size_t r = col + 1; r < n; r++) {
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (size_t c = col; c < n; c++) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (size_t c = r + 1; c < n; c++) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

}  // namespace

LinearModel fit(const data::Dataset& d) {
    const size_t k = d.n_features();
    const size_t n = d.n_rows();
    if (n < k + 1)
        throw InsufficientData("fit needs at least features+1 rows (" +
                               std::to_string(k + 1) + "), got " +
                               std::to_string(n));

    // Gram matrix and right-hand side for the design [1 | X].
    const size_t dim = k + 1;
    std::vector<std::vector<double>> gram(dim, std::vector<double>(dim, 0.0));
    std::vector<double> rhs(dim, 0.0);
    for (size_t i = 0; i < n; i++) {
        std::vector<double> xi(dim);
        xi[0] = 1.0;
        for (size_t j = 0; j < k; j++) xi[j + 1] = d.rows[i][j];
        for (size_t a = 0; a < dim; a++) {
            for (size_t b = 0; b < dim; b++) gram[a][b] += xi[a] * xi[b];
            rhs[a] += xi[a] * d.targets[i];
        }
    }

    std::vector<double> beta = solve_linear_system(gram, rhs);

    // Residual gradient check: X^T(y - X beta) should vanish at the
    // solution; a large residual means the solve went numerically bad.
    double grad_norm = 0.0, rhs_norm = 0.0;
    for (size_t a = 0; a < dim; a++) {
        double g = rhs[a];
        for (size_t b = 0; b < dim; b++) g -= gram[a][b] * beta[b];
        grad_norm += g * g;
        rhs_norm += rhs[a] * rhs[a];
    }
    if (std::sqrt(grad_norm) > 1e-8 * std::sqrt(rhs_norm) + 1e-12)
        throw SingularDesign("normal-equation solve did not converge");

    LinearModel m;
    m.intercept = beta[0];
    m.weights.assign(beta.begin() + 1, beta.end());
    m.feature_names = d.feature_names;
    return m;
}

double predict(const LinearModel& m, const std::vector<double>& x) {
    if (x.size() != m.weights.size())
        throw DimensionError("predict expects " + std::to_string(m.weights.size()) +
                             " features, got " + std::to_string(x.size()));
    double acc = m.intercept;
    for (size_t j = 0; j < x.size(); j++) acc += m.weights[j] * x[j];
    return acc;
}

EvaluationClaim evaluate_mse(const LinearModel& m, const data::Dataset& d) {
    if (d.n_rows() == 0) throw InsufficientData("cannot evaluate on empty dataset");
    double acc = 0.0;
    for (size_t i = 0; i < d.n_rows(); i++) {
        double e = predict(m, d.rows[i]) - d.targets[i];
        acc += e * e;
    }
    EvaluationClaim claim;
    claim.mse = acc / double(d.n_rows());
    claim.dataset_digest = sha256(d.canonical_serialization());
    claim.mse_quantized = quantize_value(claim.mse, 16);
    return claim;
}

Fp quantize_value(double v, unsigned scale_bits) {
    if (scale_bits < 8 || scale_bits > 32)
        throw std::invalid_argument("scale_bits must be in [8, 32]");
    if (!std::isfinite(v) || std::fabs(v) >= double(1u << 30))
        throw QuantizationOverflow("value out of quantizable range");
    // nearbyint under the default rounding mode is half-to-even
    double scaled = std::nearbyint(std::ldexp(v, (int)scale_bits));
    if (scaled >= 0) return Fp::from_u256(U256((uint64_t)scaled));
    U256 mag((uint64_t)(-scaled));
    return Fp::from_u256(u256_sub(Fp::MODULUS, mag));
}

double dequantize_value(const Fp& f, unsigned scale_bits) {
    U256 v = f.to_u256();
    // (p+1)/2: anything at or above encodes a negative magnitude
    static const U256 HALF_UP = {0xa1f0fac9f8000001ULL, 0x9419f4243cdcb848ULL,
                                 0xdc2822db40c0ac2eULL, 0x183227397098d014ULL};
    bool negative = v >= HALF_UP;
    if (negative) v = u256_sub(Fp::MODULUS, v);
    // magnitudes in practice fit far below 2^64; fold high limbs anyway
    long double mag = 0.0L;
    for (int i = 3; i >= 0; i--) mag = mag * 18446744073709551616.0L + v.limbs[i];
    double d = (double)(mag);
    return std::ldexp(negative ? -d : d, -(int)scale_bits);
}

QuantizedModel quantize(const LinearModel& m, unsigned scale_bits) {
    QuantizedModel q;
    q.scale_bits = scale_bits;
    q.feature_names = m.feature_names;
    q.intercept = quantize_value(m.intercept, scale_bits);
    q.weights.reserve(m.weights.size());
    for (double w : m.weights) q.weights.push_back(quantize_value(w, scale_bits));
    return q;
}

std::string to_json(const LinearModel& m, unsigned scale_bits) {
    nlohmann::ordered_json j;
    j["feature_names"] = m.feature_names;
    j["weights"] = m.weights;
    j["intercept"] = m.intercept;
    j["scaler"] = {{"names", m.scaler.names},
                   {"mins", m.scaler.mins},
                   {"maxs", m.scaler.maxs}};
    j["scale_bits"] = scale_bits;
    return j.dump(2);
}

LinearModel from_json(const std::string& json_text, unsigned* scale_bits_out) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedEncoding(std::string("bad model JSON: ") + e.what());
    }
    LinearModel m;
    try {
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.weights = j.at("weights").get<std::vector<double>>();
        m.intercept = j.at("intercept").get<double>();
        m.scaler.names = j.at("scaler").at("names").get<std::vector<std::string>>();
        m.scaler.mins = j.at("scaler").at("mins").get<std::vector<double>>();
        m.scaler.maxs = j.at("scaler").at("maxs").get<std::vector<double>>();
        if (scale_bits_out) *scale_bits_out = j.at("scale_bits").get<unsigned>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedEncoding(std::string("bad model JSON: ") + e.what());
    }
    return m;
}

}  // namespace zkai::model
