#include <zkai/qap.hpp>

#include <zkai/errors.hpp>

namespace zkai::qap {

QapInstance r1cs_to_qap(const circuit::R1CSSystem& sys, ExecPolicy policy) {
    const uint32_t m = (uint32_t)sys.constraints.size();
    if (m < 1) throw std::invalid_argument("cannot convert an empty system");

    QapInstance out;
    out.num_instance = sys.num_instance;
    out.num_witness = sys.num_witness;
    out.domain_size = m;
    out.t = vanishing_poly(m);

    std::vector<Fp> xs(m);
    for (uint32_t j = 0; j < m; j++) xs[j] = Fp(j + 1);
    const std::vector<Polynomial> basis = lagrange_basis(xs);

    // Dense per-wire coefficient columns of the three constraint matrices.
    const uint32_t wires = sys.num_wires();
    std::vector<std::vector<Fp>> av(wires, std::vector<Fp>(m)), bv = av, cv = av;
    for (uint32_t j = 0; j < m; j++) {
        for (const auto& [wire, coeff] : sys.constraints[j].a) av[wire][j] += coeff;
        for (const auto& [wire, coeff] : sys.constraints[j].b) bv[wire][j] += coeff;
        for (const auto& [wire, coeff] : sys.constraints[j].c) cv[wire][j] += coeff;
    }

    out.v.resize(wires);
    out.w.resize(wires);
    out.y.resize(wires);
    parallel_for(policy, wires, [&](size_t i) {
        out.v[i] = interpolate_with_basis(basis, av[i]);
        out.w[i] = interpolate_with_basis(basis, bv[i]);
        out.y[i] = interpolate_with_basis(basis, cv[i]);
    });
    return out;
}

Polynomial assignment_poly(const QapInstance& qap, const std::vector<Fp>& z,
                           ExecPolicy policy) {
    if (z.size() != qap.num_wires())
        throw DimensionError("assignment length does not match QAP wire count");

    // Combine per-wire polynomials with per-thread partial sums; field
    // addition is exact and commutative, so any combine order is identical.
    const int threads = policy == ExecPolicy::parallel ? max_threads() : 1;
    std::vector<Polynomial> pv(threads), pw(threads), py(threads);
    parallel_for(policy, z.size(), [&](size_t i) {
#ifdef _OPENMP
        const int tid = policy == ExecPolicy::parallel ? omp_get_thread_num() : 0;
#else
        const int tid = 0;
#endif
        if (z[i].is_zero()) return;
        pv[tid] = pv[tid] + qap.v[i].scaled(z[i]);
        pw[tid] = pw[tid] + qap.w[i].scaled(z[i]);
        py[tid] = py[tid] + qap.y[i].scaled(z[i]);
    });
    Polynomial sv, sw, sy;
    for (int t = 0; t < threads; t++) {
        sv = sv + pv[t];
        sw = sw + pw[t];
        sy = sy + py[t];
    }
    return sv * sw - sy;
}

}  // namespace zkai::qap
