#include "core/poly_op.hpp"

#include <cmath>
#include <stdexcept>

namespace su22 {

PolyOp::PolyOp(GradedSpace dom, GradedSpace cod, std::vector<Mat> coeffs)
    : dom_(std::move(dom)), cod_(std::move(cod)), coeff_(std::move(coeffs)) {
    if (coeff_.empty()) coeff_.push_back(Mat::Zero(cod_.dim, dom_.dim));
    for (const Mat& m : coeff_)
        if (m.rows() != cod_.dim || m.cols() != dom_.dim)
            throw std::invalid_argument("PolyOp: coefficient shape mismatch");
}

PolyOp PolyOp::constant(const GradedOperator& a) { return {a.domain, a.codomain, {a.mat}}; }

PolyOp PolyOp::linear(const GradedOperator& c0, const GradedOperator& c1) {
    return {c0.domain, c0.codomain, {c0.mat, c1.mat}};
}

PolyOp PolyOp::zero(const GradedSpace& dom, const GradedSpace& cod) {
    return {dom, cod, {Mat::Zero(cod.dim, dom.dim)}};
}

const Mat& PolyOp::coeff(int k) const {
    if (k < 0 || k > degree()) throw std::out_of_range("PolyOp::coeff");
    return coeff_[k];
}

GradedOperator PolyOp::eval(Cplx u) const {
    Mat acc = Mat::Zero(cod_.dim, dom_.dim);
    for (int k = degree(); k >= 0; --k) acc = acc * u + coeff_[k];
    return {dom_, cod_, std::move(acc)};
}

PolyOp PolyOp::shifted(Cplx s) const {
    // Horner in (u+s); cost is degree^2 matrix additions, cheap at our sizes.
    std::vector<Mat> acc{Mat::Zero(cod_.dim, dom_.dim)};
    for (int k = degree(); k >= 0; --k) {
        std::vector<Mat> next(acc.size() + 1, Mat::Zero(cod_.dim, dom_.dim));
        for (size_t j = 0; j < acc.size(); ++j) {
            next[j + 1] += acc[j];
            next[j] += acc[j] * s;
        }
        while (next.size() > 1 && next.back().norm() == 0.0) next.pop_back();
        next[0] += coeff_[k];
        acc = std::move(next);
    }
    return {dom_, cod_, std::move(acc)};
}

PolyOp PolyOp::reflected() const {
    std::vector<Mat> c = coeff_;
    for (size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    return {dom_, cod_, std::move(c)};
}

PolyOp PolyOp::scaled_arg(Cplx s) const {
    std::vector<Mat> c = coeff_;
    Cplx f{1, 0};
    for (size_t k = 1; k < c.size(); ++k) {
        f *= s;
        c[k] *= f;
    }
    return {dom_, cod_, std::move(c)};
}

PolyOp PolyOp::composed(Cplx a, Cplx b) const {
    // P(a*u + b): shift first, then scale the argument.
    return shifted(b).scaled_arg(a);
}

PolyOp PolyOp::derivative() const {
    if (coeff_.size() == 1) return zero(dom_, cod_);
    std::vector<Mat> c(coeff_.size() - 1);
    for (size_t k = 1; k < coeff_.size(); ++k) c[k - 1] = double(k) * coeff_[k];
    return {dom_, cod_, std::move(c)};
}

PolyOp PolyOp::operator*(const PolyOp& rhs) const {
    if (!(dom_ == rhs.cod_)) throw std::invalid_argument("PolyOp: composition space mismatch");
    std::vector<Mat> c(coeff_.size() + rhs.coeff_.size() - 1,
                       Mat::Zero(cod_.dim, rhs.dom_.dim));
    for (size_t i = 0; i < coeff_.size(); ++i)
        for (size_t j = 0; j < rhs.coeff_.size(); ++j) c[i + j] += coeff_[i] * rhs.coeff_[j];
    return {rhs.dom_, cod_, std::move(c)};
}

PolyOp PolyOp::operator+(const PolyOp& rhs) const {
    std::vector<Mat> c(std::max(coeff_.size(), rhs.coeff_.size()),
                       Mat::Zero(cod_.dim, dom_.dim));
    for (size_t k = 0; k < coeff_.size(); ++k) c[k] += coeff_[k];
    for (size_t k = 0; k < rhs.coeff_.size(); ++k) c[k] += rhs.coeff_[k];
    return {dom_, cod_, std::move(c)};
}

PolyOp PolyOp::operator-(const PolyOp& rhs) const { return *this + rhs * Cplx{-1, 0}; }

PolyOp PolyOp::operator*(Cplx a) const {
    std::vector<Mat> c = coeff_;
    for (Mat& m : c) m *= a;
    return {dom_, cod_, std::move(c)};
}

PolyOp PolyOp::mul_scalar(const Poly& p) const {
    if (p.is_zero()) return zero(dom_, cod_);
    std::vector<Mat> c(coeff_.size() + p.degree(), Mat::Zero(cod_.dim, dom_.dim));
    for (size_t i = 0; i < coeff_.size(); ++i)
        for (int j = 0; j <= p.degree(); ++j) c[i + j] += coeff_[i] * p.coeff(j);
    return {dom_, cod_, std::move(c)};
}

PolyOp PolyOp::divide_exact(const Poly& divisor, double* rel_remainder) const {
    if (divisor.is_zero()) throw std::invalid_argument("PolyOp::divide_exact: zero divisor");
    const int dd = divisor.degree();
    const Cplx lead = divisor.coeff(dd);
    std::vector<Mat> rem = coeff_;
    const int nd = static_cast<int>(rem.size()) - 1;
    std::vector<Mat> quot(std::max(nd - dd + 1, 1), Mat::Zero(cod_.dim, dom_.dim));
    for (int k = nd; k >= dd; --k) {
        Mat f = rem[k] / lead;
        quot[k - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * divisor.coeff(j);
    }
    double rn = 0;
    for (int k = 0; k < std::min<int>(dd, rem.size()); ++k) rn += rem[k].squaredNorm();
    if (rel_remainder) *rel_remainder = std::sqrt(rn) / std::max(1.0, norm());
    return {dom_, cod_, std::move(quot)};
}

PolyOp PolyOp::trimmed(double tol) const {
    double scale = 0;
    for (const Mat& m : coeff_) scale = std::max(scale, m.norm());
    std::vector<Mat> c = coeff_;
    while (c.size() > 1 && c.back().norm() <= tol * std::max(scale, 1.0)) c.pop_back();
    return {dom_, cod_, std::move(c)};
}

Poly PolyOp::entry(int r, int c) const {
    std::vector<Cplx> e(coeff_.size());
    for (size_t k = 0; k < coeff_.size(); ++k) e[k] = coeff_[k](r, c);
    return Poly(std::move(e));
}

double PolyOp::norm() const {
    double s = 0;
    for (const Mat& m : coeff_) s += m.squaredNorm();
    return std::sqrt(s);
}

double PolyOp::coeff_norm(int k) const {
    return (k >= 0 && k <= degree()) ? coeff_[k].norm() : 0.0;
}

Cplx PolyOp::scalar_coeff(int k) const {
    if (k < 0 || k > degree()) return {0, 0};
    return coeff_[k].diagonal().mean();
}

PolyOp embed(const PolyOp& a, const TensorLayout& layout, std::span<const int> positions) {
    std::vector<Mat> c;
    c.reserve(a.degree() + 1);
    for (int k = 0; k <= a.degree(); ++k) {
        GradedOperator g{a.domain(), a.codomain(), a.coeff(k)};
        c.push_back(embed(g, layout, positions).mat);
    }
    return {layout.composite(), layout.composite(), std::move(c)};
}

PolyOp super_partial_trace(const PolyOp& x, const TensorLayout& layout, int k) {
    std::vector<Mat> c;
    c.reserve(x.degree() + 1);
    GradedSpace red;
    for (int j = 0; j <= x.degree(); ++j) {
        GradedOperator g{x.domain(), x.codomain(), x.coeff(j)};
        GradedOperator t = super_partial_trace(g, layout, k);
        red = t.domain;
        c.push_back(std::move(t.mat));
    }
    return {red, red, std::move(c)};
}

PolyOp super_transpose(const PolyOp& x, const TensorLayout& layout, int k) {
    std::vector<Mat> c;
    c.reserve(x.degree() + 1);
    for (int j = 0; j <= x.degree(); ++j) {
        GradedOperator g{x.domain(), x.codomain(), x.coeff(j)};
        c.push_back(super_transpose(g, layout, k).mat);
    }
    return {x.domain(), x.codomain(), std::move(c)};
}

double rel_residual(const PolyOp& lhs, const PolyOp& rhs) {
    const int deg = std::max(lhs.degree(), rhs.degree());
    double diff = 0;
    for (int k = 0; k <= deg; ++k) {
        const Mat a = k <= lhs.degree() ? lhs.coeff(k) : Mat::Zero(lhs.codomain().dim, lhs.domain().dim);
        const Mat b = k <= rhs.degree() ? rhs.coeff(k) : Mat::Zero(rhs.codomain().dim, rhs.domain().dim);
        diff += (a - b).squaredNorm();
    }
    return std::sqrt(diff) / std::max({1.0, lhs.norm(), rhs.norm()});
}

}  // namespace su22
