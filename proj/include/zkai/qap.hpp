#pragma once

#include <zkai/circuit.hpp>
#include <zkai/exec.hpp>
#include <zkai/polynomial.hpp>

#include <vector>

namespace zkai::qap {

// Quadratic arithmetic program over the domain {1..m}: per wire i the
// polynomials v_i, w_i, y_i interpolate that wire's A/B/C coefficients
// across the m constraints, and the target t vanishes on the domain.
// For a satisfying assignment z,
//   p(x) = (sum z_i v_i)(sum z_i w_i) - (sum z_i y_i)
// is divisible by t.
struct QapInstance {
    uint32_t num_instance = 0;
    uint32_t num_witness = 0;
    uint32_t domain_size = 0;  // m
    std::vector<Polynomial> v;
    std::vector<Polynomial> w;
    std::vector<Polynomial> y;
    Polynomial t;

    uint32_t num_wires() const { return num_instance + num_witness; }
};

// Per-wire Lagrange interpolation of the constraint matrices; the heavy
// kernel of setup. Wires are independent, so the parallel policy splits
// them across threads against one shared basis.
QapInstance r1cs_to_qap(const circuit::R1CSSystem& sys,
                        ExecPolicy policy = ExecPolicy::parallel);

// p(x) for an assignment (see above); tests divide by t to decide
// satisfaction.
Polynomial assignment_poly(const QapInstance& qap, const std::vector<Fp>& z,
                           ExecPolicy policy = ExecPolicy::parallel);

}  // namespace zkai::qap
