#pragma once

#include "core/graded.hpp"
#include "core/poly.hpp"

#include <vector>

namespace su22 {

// Operator-valued polynomial in the spectral parameter u: sum_k coeff[k] u^k,
// with every coefficient a matrix between the same graded spaces. Degrees stay
// below ~2N+6 in this project, so dense coefficient vectors are fine.
class PolyOp {
  public:
    PolyOp() = default;
    PolyOp(GradedSpace dom, GradedSpace cod, std::vector<Mat> coeffs);

    static PolyOp constant(const GradedOperator& a);
    // c0 + c1*u
    static PolyOp linear(const GradedOperator& c0, const GradedOperator& c1);
    static PolyOp zero(const GradedSpace& dom, const GradedSpace& cod);

    const GradedSpace& domain() const { return dom_; }
    const GradedSpace& codomain() const { return cod_; }
    int degree() const { return static_cast<int>(coeff_.size()) - 1; }
    const Mat& coeff(int k) const;
    const std::vector<Mat>& coeffs() const { return coeff_; }

    GradedOperator eval(Cplx u) const;
    PolyOp shifted(Cplx s) const;    // P(u + s)
    PolyOp reflected() const;        // P(-u)
    PolyOp scaled_arg(Cplx s) const; // P(s*u)
    PolyOp composed(Cplx a, Cplx b) const;  // P(a*u + b)
    PolyOp derivative() const;

    PolyOp operator*(const PolyOp& rhs) const;  // operator composition
    PolyOp operator+(const PolyOp& rhs) const;
    PolyOp operator-(const PolyOp& rhs) const;
    PolyOp operator*(Cplx a) const;
    PolyOp mul_scalar(const Poly& p) const;

    // Entrywise exact division by a scalar polynomial. The relative remainder
    // norm is written to *rel_remainder; a large value flags a broken fusion
    // identity upstream.
    PolyOp divide_exact(const Poly& divisor, double* rel_remainder) const;

    // Drop trailing coefficients with norm <= tol * max coefficient norm.
    PolyOp trimmed(double tol) const;

    // Per-entry scalar polynomial (row r, column c).
    Poly entry(int r, int c) const;

    double norm() const;           // sqrt(sum of squared coefficient norms)
    double coeff_norm(int k) const;
    Cplx scalar_coeff(int k) const;  // coeff(k) assumed ~ scalar*id; returns mean diagonal

  private:
    GradedSpace dom_, cod_;
    std::vector<Mat> coeff_;
};

PolyOp embed(const PolyOp& a, const TensorLayout& layout, std::span<const int> positions);
PolyOp super_partial_trace(const PolyOp& x, const TensorLayout& layout, int k);
PolyOp super_transpose(const PolyOp& x, const TensorLayout& layout, int k);

double rel_residual(const PolyOp& lhs, const PolyOp& rhs);

}  // namespace su22
