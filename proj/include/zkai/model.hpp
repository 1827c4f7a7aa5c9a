#pragma once

#include <zkai/dataset.hpp>
#include <zkai/field.hpp>
#include <zkai/hash.hpp>

#include <string>
#include <vector>

namespace zkai::model {

// Least-squares linear predictor over normalized features. The intercept
// absorbs every constant term of the fitted equation.
struct LinearModel {
    std::vector<double> weights;
    double intercept = 0.0;
    std::vector<std::string> feature_names;
    data::ScalerParams scaler;

    std::size_t n_features() const { return weights.size(); }
};

// Fixed-point image of a LinearModel over the scalar field.
// Encoding: v -> round(v * 2^scale_bits) mod p, negatives as p - |scaled|.
struct QuantizedModel {
    unsigned scale_bits = 16;
    std::vector<Fp> weights;
    Fp intercept;
    std::vector<std::string> feature_names;

    std::size_t n_features() const { return weights.size(); }
};

// A claimed evaluation result, bound to the exact dataset it was measured
// on via a digest of the canonical serialization.
struct EvaluationClaim {
    Digest dataset_digest{};
    double mse = 0.0;
    Fp mse_quantized;  // mse at the model's quantization scale
};

// Ordinary least squares through the normal equations (X^T X) beta = X^T y,
// solved with partial-pivot elimination. Requires rows >= features + 1 and
// a full-rank design; throws SingularDesign otherwise.
LinearModel fit(const data::Dataset& d);

// intercept + <weights, x>. Throws DimensionError on size mismatch.
double predict(const LinearModel& m, const std::vector<double>& x);

// Mean squared error over the dataset plus the binding digest.
// Throws InsufficientData on an empty dataset.
EvaluationClaim evaluate_mse(const LinearModel& m, const data::Dataset& d);

// Fixed-point encoding of a single value. scale_bits in [8, 32]; values
// must satisfy |v| < 2^30. Rounding is half-to-even.
Fp quantize_value(double v, unsigned scale_bits);
double dequantize_value(const Fp& f, unsigned scale_bits);

QuantizedModel quantize(const LinearModel& m, unsigned scale_bits = 16);

// Model artifact JSON: feature names, weights, intercept, scaler bounds,
// scale_bits. Round-trips exactly (doubles stored full-precision).
std::string to_json(const LinearModel& m, unsigned scale_bits);
LinearModel from_json(const std::string& json_text, unsigned* scale_bits_out);

}  // namespace zkai::model
