#pragma once

#include <zkai/exec.hpp>
#include <zkai/field.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace zkai {

// Dense polynomial over Fp, coefficients lowest degree first.
// Trailing zero coefficients are normalized away; the zero polynomial is
// the empty coefficient sequence.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Fp> coeffs) : coeffs_(std::move(coeffs)) {
        normalize();
    }
    static Polynomial constant(const Fp& c) {
        return c.is_zero() ? Polynomial() : Polynomial({c});
    }

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1.
    int degree() const { return (int)coeffs_.size() - 1; }
    const std::vector<Fp>& coeffs() const { return coeffs_; }

    Fp coeff(size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : Fp::zero();
    }

    Fp evaluate(const Fp& x) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;  // schoolbook
    Polynomial scaled(const Fp& k) const;

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Polynomial& o) const { return coeffs_ != o.coeffs_; }

private:
    std::vector<Fp> coeffs_;

    void normalize() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
};

// num = den * quotient + remainder, deg(remainder) < deg(den).
// Throws DivisionByZero if den is the zero polynomial.
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& num,
                                              const Polynomial& den);

// Unique polynomial of degree < |points| through the given points.
// Throws DuplicateEvaluationPoint on repeated x-coordinates.
Polynomial lagrange_interpolate(const std::vector<std::pair<Fp, Fp>>& points);

// Basis polynomials L_j with L_j(x_j) = 1 and L_j(x_k) = 0 for k != j.
// Precompute once when interpolating many value sets over a shared domain.
// Each basis polynomial is independent, so the dominant O(n^3) build
// parallelizes across j.
std::vector<Polynomial> lagrange_basis(const std::vector<Fp>& xs,
                                       ExecPolicy policy = ExecPolicy::serial);

// Interpolation through (xs[j], values[j]) using a precomputed basis.
Polynomial interpolate_with_basis(const std::vector<Polynomial>& basis,
                                  const std::vector<Fp>& values);

// Vanishing polynomial of the domain {1, 2, ..., m}.
Polynomial vanishing_poly(size_t m);

}  // namespace zkai
