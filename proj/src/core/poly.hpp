#pragma once

#include "core/types.hpp"

#include <span>
#include <vector>

namespace su22 {

// Dense univariate polynomial with complex coefficients, c[k] * u^k.
// Degrees in this project stay small (<= 2N+6), so no effort is spent on
// anything fancier than coefficient vectors.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly{}; }
    static Poly constant(Cplx a);
    static Poly linear(Cplx a0, Cplx a1);  // a0 + a1*u
    static Poly x();
    static Poly from_roots(std::span<const Cplx> roots);  // prod (u - r_i)

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Cplx coeff(int k) const { return k >= 0 && k < (int)c_.size() ? c_[k] : Cplx{0, 0}; }
    const std::vector<Cplx>& coeffs() const { return c_; }

    Cplx eval(Cplx u) const;
    Poly derivative() const;
    Poly shifted(Cplx s) const;    // p(u + s)
    Poly reflected() const;        // p(-u)
    Poly scaled_arg(Cplx s) const; // p(s*u)

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(Cplx a) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    // Euclidean division: *this = q * d + r with deg r < deg d.
    void divide(const Poly& d, Poly& q, Poly& r) const;

    // All complex roots by Durand-Kerner iteration; degrees here stay small.
    std::vector<Cplx> roots() const;

    double norm() const;  // l2 of coefficients

  private:
    void trim();
    std::vector<Cplx> c_;
};

inline Poly operator*(Cplx a, const Poly& p) { return p * a; }

}  // namespace su22
