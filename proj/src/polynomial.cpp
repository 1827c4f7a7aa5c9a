#include <zkai/polynomial.hpp>

#include <algorithm>

namespace zkai {

Fp Polynomial::evaluate(const Fp& x) const {
    Fp acc;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        acc = acc * x + coeffs_[i];
    }
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Fp> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (size_t i = 0; i < out.size(); i++) out[i] = coeff(i) + o.coeff(i);
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<Fp> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (size_t i = 0; i < out.size(); i++) out[i] = coeff(i) - o.coeff(i);
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Fp> out(coeffs_.size() + o.coeffs_.size() - 1);
    for (size_t i = 0; i < coeffs_.size(); i++) {
        if (coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < o.coeffs_.size(); j++) {
            out[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(const Fp& k) const {
    std::vector<Fp> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); i++) out[i] = coeffs_[i] * k;
    return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& num,
                                              const Polynomial& den) {
    if (den.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (num.degree() < den.degree()) return {Polynomial(), num};

    std::vector<Fp> rem(num.coeffs());
    std::vector<Fp> quot(num.degree() - den.degree() + 1);
    const Fp lead_inv = den.coeffs().back().inv();
    const size_t dden = (size_t)den.degree();

    for (size_t i = rem.size(); i-- > dden;) {
        Fp factor = rem[i] * lead_inv;
        if (factor.is_zero()) continue;
        quot[i - dden] = factor;
        for (size_t j = 0; j <= dden; j++) {
            rem[i - dden + j] -= factor * den.coeffs()[j];
        }
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial lagrange_interpolate(const std::vector<std::pair<Fp, Fp>>& points) {
    std::vector<Fp> xs(points.size()), ys(points.size());
    for (size_t i = 0; i < points.size(); i++) {
        xs[i] = points[i].first;
        ys[i] = points[i].second;
    }
    return interpolate_with_basis(lagrange_basis(xs), ys);
}

std::vector<Polynomial> lagrange_basis(const std::vector<Fp>& xs,
                                       ExecPolicy policy) {
    const size_t n = xs.size();
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (xs[i] == xs[j])
                throw DuplicateEvaluationPoint(
                    "duplicate x-coordinate in interpolation set");
        }
    }

    std::vector<Polynomial> basis(n);
    parallel_for(policy, n, [&](size_t j) {
        Polynomial num = Polynomial::constant(Fp::one());
        Fp denom = Fp::one();
        for (size_t k = 0; k < n; k++) {
            if (k == j) continue;
            num = num * Polynomial({-xs[k], Fp::one()});  // (x - x_k)
            denom *= xs[j] - xs[k];
        }
        basis[j] = num.scaled(denom.inv());
    });
    return basis;
}

Polynomial interpolate_with_basis(const std::vector<Polynomial>& basis,
                                  const std::vector<Fp>& values) {
    if (basis.size() != values.size())
        throw DimensionError("basis/value count mismatch in interpolation");
    Polynomial acc;
    for (size_t j = 0; j < basis.size(); j++) {
        if (values[j].is_zero()) continue;
        acc = acc + basis[j].scaled(values[j]);
    }
    return acc;
}

Polynomial vanishing_poly(size_t m) {
    Polynomial t = Polynomial::constant(Fp::one());
    for (size_t j = 1; j <= m; j++) {
        t = t * Polynomial({-Fp(j), Fp::one()});
    }
    return t;
}

}  // namespace zkai
