#include <zkai/circuit.hpp>

#include <zkai/errors.hpp>

namespace zkai::circuit {

R1CSSystem compile_linear(uint32_t n_features) {
    if (n_features < 1)
        throw std::invalid_argument("circuit needs at least one feature");

    R1CSSystem sys;
    sys.n_features = n_features;
    sys.num_instance = n_features + 2;      // one, x_1..x_n, y
    sys.num_witness = 2 * n_features + 1;   // intercept, weights, products

    // Product constraints: a_i * x_i = prod_i.
    for (uint32_t i = 0; i < n_features; i++) {
        Constraint c;
        c.a = {{sys.weight_wire(i), Fp::one()}};
        c.b = {{sys.input_wire(i), Fp::one()}};
        c.c = {{sys.product_wire(i), Fp::one()}};
        sys.constraints.push_back(std::move(c));
        sys.gates.push_back(
            {Gate::Kind::mul, sys.weight_wire(i), sys.input_wire(i),
             sys.product_wire(i)});
    }

    // Sum binding: (intercept + sum of products) * 1 = y. The addition
    // chain below is IR only; its scratch wires never reach the R1CS.
    Constraint sum;
    sum.a.push_back({sys.intercept_wire(), Fp::one()});
    for (uint32_t i = 0; i < n_features; i++)
        sum.a.push_back({sys.product_wire(i), Fp::one()});
    sum.b = {{sys.one_wire(), Fp::one()}};
    sum.c = {{sys.output_wire(), Fp::one()}};
    sys.constraints.push_back(std::move(sum));

    uint32_t scratch = sys.num_wires();
    uint32_t acc = sys.intercept_wire();
    for (uint32_t i = 0; i < n_features; i++) {
        uint32_t out = (i + 1 == n_features) ? sys.output_wire() : scratch++;
        sys.gates.push_back({Gate::Kind::add, acc, sys.product_wire(i), out});
        acc = out;
    }
    return sys;
}

Witness generate_witness(const R1CSSystem& sys, const model::QuantizedModel& m,
                         const std::vector<Fp>& public_inputs) {
    if (public_inputs.size() != sys.n_features)
        throw DimensionError("circuit expects " + std::to_string(sys.n_features) +
                             " inputs, got " + std::to_string(public_inputs.size()));
    if (m.n_features() != sys.n_features)
        throw DimensionError("model has " + std::to_string(m.n_features()) +
                             " weights, circuit expects " +
                             std::to_string(sys.n_features));

    Witness w;
    w.assignment.assign(sys.num_wires(), Fp::zero());
    std::vector<Fp>& z = w.assignment;

    z[sys.one_wire()] = Fp::one();
    // Intercept joins the 2^(2*scale_bits) product scale.
    const Fp rescale = Fp::two_pow(m.scale_bits);
    z[sys.intercept_wire()] = m.intercept * rescale;

    Fp out = z[sys.intercept_wire()];
    for (uint32_t i = 0; i < sys.n_features; i++) {
        z[sys.input_wire(i)] = public_inputs[i];
        z[sys.weight_wire(i)] = m.weights[i];
        Fp prod = m.weights[i] * public_inputs[i];
        z[sys.product_wire(i)] = prod;
        out += prod;
    }
    z[sys.output_wire()] = out;
    return w;
}

Fp eval_row(const SparseRow& row, const std::vector<Fp>& z) {
    Fp acc;
    for (const auto& [wire, coeff] : row) acc += coeff * z[wire];
    return acc;
}

bool check_r1cs(const R1CSSystem& sys, const Witness& w) {
    if (w.assignment.size() != sys.num_wires())
        throw DimensionError("assignment has " +
                             std::to_string(w.assignment.size()) + " wires, system " +
                             std::to_string(sys.num_wires()));
    for (const auto& c : sys.constraints) {
        Fp lhs = eval_row(c.a, w.assignment) * eval_row(c.b, w.assignment);
        if (lhs != eval_row(c.c, w.assignment)) return false;
    }
    return true;
}

std::vector<Fp> public_inputs_of(const R1CSSystem& sys, const Witness& w) {
    return std::vector<Fp>(w.assignment.begin() + 1,
                           w.assignment.begin() + sys.num_instance);
}

namespace {
void dump_row(std::string& out, const SparseRow& row) {
    bool first = true;
    for (const auto& [wire, coeff] : row) {
        if (!first) out += ',';
        out += std::to_string(wire);
        out += ':';
        out += coeff.to_hex();
        first = false;
    }
}
}  // namespace

std::string dump_r1cs(const R1CSSystem& sys) {
    std::string out;
    for (const auto& c : sys.constraints) {
        dump_row(out, c.a);
        out += " | ";
        dump_row(out, c.b);
        out += " | ";
        dump_row(out, c.c);
        out += '\n';
    }
    return out;
}

}  // namespace zkai::circuit
