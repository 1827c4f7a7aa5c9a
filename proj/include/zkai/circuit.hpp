#pragma once

#include <zkai/field.hpp>
#include <zkai/model.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace zkai::circuit {

// Circuit IR node. Multiplication gates become rank-1 constraints;
// addition gates are folded into constraint linear combinations and use
// scratch wire ids at or above the R1CS wire count.
struct Gate {
    enum class Kind : uint8_t { mul, add };
    Kind kind;
    uint32_t left;
    uint32_t right;
    uint32_t out;
};

using SparseRow = std::vector<std::pair<uint32_t, Fp>>;  // (wire, coefficient)

struct Constraint {
    SparseRow a;
    SparseRow b;
    SparseRow c;
};

// Wire order: [0]=constant one, [1..n]=inputs x_i, [n+1]=public output,
// then private wires: intercept, weights a_1..a_n, products a_i*x_i.
struct R1CSSystem {
    uint32_t num_instance = 0;  // constant-one wire + inputs + output
    uint32_t num_witness = 0;
    uint32_t n_features = 0;
    std::vector<Constraint> constraints;
    std::vector<Gate> gates;

    uint32_t num_wires() const { return num_instance + num_witness; }

    uint32_t one_wire() const { return 0; }
    uint32_t input_wire(uint32_t i) const { return 1 + i; }          // i < n
    uint32_t output_wire() const { return 1 + n_features; }
    uint32_t intercept_wire() const { return num_instance; }
    uint32_t weight_wire(uint32_t i) const { return num_instance + 1 + i; }
    uint32_t product_wire(uint32_t i) const {
        return num_instance + 1 + n_features + i;
    }
};

struct Witness {
    std::vector<Fp> assignment;  // z, instance part first, z[0] = 1
};

// Linear-model inference circuit: one multiplication constraint per
// weight-input product plus one constraint binding the folded sum
// (scaled intercept + products) to the public output. n_features + 1
// constraints total.
//
// Scaling: weights and inputs are fixed-point at 2^scale_bits, so each
// product carries 2^(2*scale_bits). The intercept wire holds the
// intercept rescaled to the product scale, and the public output is
// published at 2^(2*scale_bits); descaling happens off-circuit.
R1CSSystem compile_linear(uint32_t n_features);

// Full satisfying assignment for the model and quantized public inputs.
// Throws DimensionError when sizes disagree.
Witness generate_witness(const R1CSSystem& sys, const model::QuantizedModel& m,
                         const std::vector<Fp>& public_inputs);

// True iff <A,z> * <B,z> == <C,z> for every constraint.
// Throws DimensionError if the assignment length is wrong.
bool check_r1cs(const R1CSSystem& sys, const Witness& w);

Fp eval_row(const SparseRow& row, const std::vector<Fp>& z);

// Instance slice of a witness, excluding the constant-one wire:
// [x_1..x_n, y].
std::vector<Fp> public_inputs_of(const R1CSSystem& sys, const Witness& w);

// Textual dump, one constraint per line: three `idx:coeff` sparse vectors
// separated by " | ", coefficients as fixed-width hex.
std::string dump_r1cs(const R1CSSystem& sys);

}  // namespace zkai::circuit
