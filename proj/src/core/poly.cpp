#include "core/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace su22 {

namespace {
constexpr double kTrimEps = 0.0;  // exact-zero trim only; callers decide tolerances
}

Poly Poly::constant(Cplx a) { return Poly{{a}}; }

Poly Poly::linear(Cplx a0, Cplx a1) { return Poly{{a0, a1}}; }

Poly Poly::x() { return Poly{{Cplx{0, 0}, Cplx{1, 0}}}; }

Poly Poly::from_roots(std::span<const Cplx> roots) {
    Poly p = constant({1, 0});
    for (Cplx r : roots) p *= linear(-r, {1, 0});
    return p;
}

Cplx Poly::eval(Cplx u) const {
    Cplx acc{0, 0};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * u + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return zero();
    std::vector<Cplx> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
    return Poly(std::move(d));
}

Poly Poly::shifted(Cplx s) const {
    // p(u+s) via Horner in (u+s)
    Poly res = zero();
    const Poly lin = linear(s, {1, 0});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) res = res * lin + constant(*it);
    return res;
}

Poly Poly::reflected() const {
    std::vector<Cplx> d = c_;
    for (size_t k = 1; k < d.size(); k += 2) d[k] = -d[k];
    return Poly(std::move(d));
}

Poly Poly::scaled_arg(Cplx s) const {
    std::vector<Cplx> d = c_;
    Cplx f{1, 0};
    for (size_t k = 1; k < d.size(); ++k) {
        f *= s;
        d[k] *= f;
    }
    return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Cplx> d(std::max(c_.size(), o.c_.size()), Cplx{0, 0});
    for (size_t k = 0; k < c_.size(); ++k) d[k] += c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) d[k] += o.c_[k];
    return Poly(std::move(d));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Cplx{-1, 0}; }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<Cplx> d(c_.size() + o.c_.size() - 1, Cplx{0, 0});
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(d));
}

Poly Poly::operator*(Cplx a) const {
    std::vector<Cplx> d = c_;
    for (auto& v : d) v *= a;
    return Poly(std::move(d));
}

void Poly::divide(const Poly& d, Poly& q, Poly& r) const {
    if (d.is_zero()) throw std::invalid_argument("Poly::divide: zero divisor");
    std::vector<Cplx> rem = c_;
    const int dd = d.degree();
    const Cplx lead = d.c_.back();
    std::vector<Cplx> quot;
    int rd = static_cast<int>(rem.size()) - 1;
    if (rd >= dd) quot.assign(rd - dd + 1, Cplx{0, 0});
    while (rd >= dd) {
        Cplx f = rem[rd] / lead;
        quot[rd - dd] = f;
        for (int k = 0; k <= dd; ++k) rem[rd - dd + k] -= f * d.c_[k];
        rem[rd] = {0, 0};
        --rd;
        while (rd >= 0 && rem[rd] == Cplx{0, 0}) --rd;
        if (rd < 0) break;
    }
    rem.resize(std::max(dd, 0));
    q = Poly(std::move(quot));
    r = Poly(std::move(rem));
}

std::vector<Cplx> Poly::roots() const {
    const int n = degree();
    if (n <= 0) return {};
    std::vector<Cplx> a(c_);
    const Cplx lead = a.back();
    for (Cplx& v : a) v /= lead;
    std::vector<Cplx> r(n);
    // deterministic non-real starting spread
    const Cplx w{0.4, 0.9};
    Cplx p{1, 0};
    double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[i]));
    radius = 1.0 + radius;
    for (int i = 0; i < n; ++i) {
        p *= w;
        r[i] = radius * p / std::abs(p);
    }
    auto eval_monic = [&](Cplx z) {
        Cplx acc{1, 0};
        for (int k = n - 1; k >= 0; --k) acc = acc * z + a[k];
        return acc;
    };
    for (int it = 0; it < 400; ++it) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            Cplx denom{1, 0};
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= r[i] - r[j];
            if (denom == Cplx{0, 0}) denom = Cplx{1e-20, 0};
            const Cplx delta = eval_monic(r[i]) / denom;
            r[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14 * radius) break;
    }
    return r;
}

double Poly::norm() const {
    double s = 0;
    for (auto v : c_) s += std::norm(v);
    return std::sqrt(s);
}

void Poly::trim() {
    while (!c_.empty() && std::abs(c_.back()) <= kTrimEps) c_.pop_back();
}

}  // namespace su22
