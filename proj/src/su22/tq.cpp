#include "su22/tq.hpp"

#include "su22/open_chain.hpp"

#include <cmath>
#include <numbers>

namespace su22 {

namespace {
constexpr double kPoleEps = 1e-12;

bool small(Cplx v, double scale) { return std::abs(v) < kPoleEps * std::max(1.0, scale); }
}  // namespace

bool open_root_counts_ok(const BetheState& s, int n) {
    return s.sector_k >= 0 && s.sector_k <= n && s.l2() == s.sector_k &&
           s.l1() == s.l2() + n + 4 && s.l3() == 2 * n + s.l2() + 4;
}

// ---------------------------------------------------------------------------
// Periodic
// ---------------------------------------------------------------------------

Cplx PeriodicTQ::q(int m, Cplx u, const BetheState& s) const {
    switch (m) {
        case 0: {
            Cplx p{1, 0};
            for (const Cplx& th : cfg_.thetas) p *= u - th;
            return p;
        }
        case 1: case 2: case 3: {
            const std::vector<Cplx>& roots = m == 1 ? s.r1 : m == 2 ? s.r2 : s.r3;
            Cplx p{1, 0};
            for (const Cplx& r : roots) p *= u - r;
            return p;
        }
        case 4: return {1, 0};
        default: throw std::invalid_argument("PeriodicTQ::q: m in 0..4");
    }
}

std::optional<Cplx> PeriodicTQ::z(int l, Cplx u, const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    const Cplx ql = q(l, u, s), qlm = q(l - 1, u, s);
    if (small(ql, 1) || small(qlm, 1)) return std::nullopt;
    const double sgn = l <= 2 ? 1.0 : -1.0;
    Cplx ratio;
    if (l <= 2)
        ratio = q(l - 1, u + eta, s) * q(l, u - eta, s) / (ql * qlm);
    else
        ratio = q(l - 1, u - eta, s) * q(l, u + eta, s) / (ql * qlm);
    return sgn * q(0, u, s) * ratio;
}

std::optional<Cplx> PeriodicTQ::lambda(Cplx u, const BetheState& s) const {
    Cplx acc{0, 0};
    for (int l = 1; l <= 4; ++l) {
        auto v = z(l, u, s);
        if (!v) return std::nullopt;
        acc += *v;
    }
    return acc;
}

std::optional<Cplx> PeriodicTQ::lambda1(Cplx u, const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    const Cplx q0p = q(0, u + 0.5 * eta, s);
    if (small(q0p, 1)) return std::nullopt;
    Cplx acc{0, 0};
    for (int l = 1; l <= 2; ++l) {
        auto a = z(l, u + 0.5 * eta, s), b = z(l, u - 0.5 * eta, s);
        if (!a || !b) return std::nullopt;
        acc += *a * *b;
    }
    for (int l = 2; l <= 4; ++l)
        for (int m = 1; m < l; ++m) {
            auto a = z(l, u + 0.5 * eta, s), b = z(m, u - 0.5 * eta, s);
            if (!a || !b) return std::nullopt;
            acc += *a * *b;
        }
    return acc / q0p;
}

std::optional<Cplx> PeriodicTQ::lambda2(Cplx u, const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    const Cplx q0m = q(0, u - 0.5 * eta, s);
    if (small(q0m, 1)) return std::nullopt;
    Cplx acc{0, 0};
    for (int l = 3; l <= 4; ++l) {
        auto a = z(l, u + 0.5 * eta, s), b = z(l, u - 0.5 * eta, s);
        if (!a || !b) return std::nullopt;
        acc += *a * *b;
    }
    for (int l = 2; l <= 4; ++l)
        for (int m = 1; m < l; ++m) {
            auto a = z(l, u - 0.5 * eta, s), b = z(m, u + 0.5 * eta, s);
            if (!a || !b) return std::nullopt;
            acc += *a * *b;
        }
    return acc / q0m;
}

std::vector<Cplx> PeriodicTQ::bae_residuals(const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    std::vector<Cplx> out;
    auto balanced = [](Cplx a, Cplx b) {
        return (a + b) / (1.0 + std::abs(a) + std::abs(b));
    };
    for (const Cplx& la : s.r1) {
        const Cplx a = q(0, la + eta, s) * q(1, la - eta, s) * q(2, la, s);
        const Cplx b = q(0, la, s) * q(1, la + eta, s) * q(2, la - eta, s);
        out.push_back(balanced(a, b));
    }
    for (const Cplx& la : s.r2) {
        const Cplx a = q(1, la + eta, s) * q(3, la, s);
        const Cplx b = -q(1, la, s) * q(3, la + eta, s);
        out.push_back(balanced(a, b));
    }
    for (const Cplx& la : s.r3) {
        const Cplx a = q(2, la - eta, s) * q(3, la + eta, s);
        const Cplx b = q(2, la, s) * q(3, la - eta, s);
        out.push_back(balanced(a, b));
    }
    return out;
}

std::vector<Cplx> PeriodicTQ::printed_bae_residuals(const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    std::vector<Cplx> out;
    auto balanced = [](Cplx a, Cplx b) {
        return (a + b) / (1.0 + std::abs(a) + std::abs(b));
    };
    for (const Cplx& la : s.r1) {
        const Cplx a = q(0, la + eta, s) * q(1, la - eta, s) * q(2, la, s);
        const Cplx b = q(0, la, s) * q(1, la + eta, s) * q(2, la - eta, s);
        out.push_back(balanced(a, b));
    }
    // Verbatim second family: right-hand side is identically 1.
    for (const Cplx& la : s.r2) {
        const Cplx a = q(1, la + eta, s);
        const Cplx b = -q(1, la, s);
        out.push_back(balanced(a, b));
    }
    for (const Cplx& la : s.r3) {
        const Cplx a = q(2, la - eta, s) * q(3, la + eta, s);
        const Cplx b = q(2, la, s) * q(3, la - eta, s);
        out.push_back(balanced(a, b));
    }
    return out;
}

std::vector<double> PeriodicTQ::functional_relation_residuals(const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    std::vector<double> out;
    auto rr = [](std::optional<Cplx> lhs, std::optional<Cplx> rhs) {
        if (!lhs || !rhs) return 1e9;
        return std::abs(*lhs - *rhs) / std::max({1.0, std::abs(*lhs), std::abs(*rhs)});
    };
    for (const Cplx& th : cfg_.thetas) {
        Cplx pp{1, 0}, pm{1, 0};
        for (const Cplx& tl : cfg_.thetas) {
            pp *= th - tl + eta;
            pm *= th - tl - eta;
        }
        auto l_th = lambda(th, s);
        auto a1 = lambda1(th + 0.5 * eta, s);
        auto a2 = lambda2(th - 0.5 * eta, s);
        auto l_p = lambda(th + eta, s), l_m = lambda(th - eta, s);
        if (l_th && l_p && a1)
            out.push_back(rr(Cplx(*l_th * *l_p), Cplx(pp * *a1)));
        else
            out.push_back(1e9);
        if (l_th && l_m && a2)
            out.push_back(rr(Cplx(*l_th * *l_m), Cplx(pm * *a2)));
        else
            out.push_back(1e9);
        if (a1 && a2 && l_p && l_m)
            out.push_back(rr(Cplx(*a1 * *l_m * pp), Cplx(*a2 * *l_p * pm)));
        else
            out.push_back(1e9);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Open
// ---------------------------------------------------------------------------

Cplx OpenTQ::sroot(int branch) const {
    return double(branch) * std::sqrt(Cplx{1, 0} + bc_.c[0] * bc_.c[1]);
}

Cplx OpenTQ::sroot_tilde(int branch) const {
    return double(branch) * std::sqrt(Cplx{1, 0} + bc_.ct[0] * bc_.ct[1]);
}

Cplx OpenTQ::q(int m, Cplx u, const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    switch (m) {
        case 0: {
            Cplx p{1, 0};
            for (const Cplx& th : cfg_.thetas) p *= (u - th) * (u + th);
            return p;
        }
        case 1: case 2: {
            const std::vector<Cplx>& roots = m == 1 ? s.r1 : s.r2;
            Cplx p{1, 0};
            for (const Cplx& r : roots) p *= (u - r) * (u + r + double(m) * eta);
            return p;
        }
        case 3: {
            Cplx p{1, 0};
            for (const Cplx& r : s.r3) p *= (u - r) * (u + r + eta);
            return p;
        }
        case 4: return {1, 0};
        default: throw std::invalid_argument("OpenTQ::q: m in 0..4");
    }
}

Cplx OpenTQ::kfun(int l, Cplx u, int sb, int stb) const {
    const Cplx eta = cfg_.eta;
    const Cplx s = sroot(sb), st = sroot_tilde(stb);
    switch (l) {
        case 1: return (bc_.xi + s * u) * (bc_.xi_tilde + st * u);
        case 2: return (bc_.xi - s * (u + eta)) * (bc_.xi_tilde - st * (u + eta));
        case 3: return (bc_.xi + s * (u + eta)) * (bc_.xi_tilde + st * (u + eta));
        case 4: return (bc_.xi - s * u) * (bc_.xi_tilde - st * u);
        default: throw std::invalid_argument("OpenTQ::kfun: l in 1..4");
    }
}

Cplx OpenTQ::alpha(int l, Cplx u) const {
    const Cplx eta = cfg_.eta;
    if (l == 1 || l == 4) return u / (u + 0.5 * eta);
    return u * u / ((u + 0.5 * eta) * (u + eta));
}

Cplx OpenTQ::fpoly(int l, Cplx u, int sb, int stb) const {
    const Cplx eta = cfg_.eta;
    const Cplx root = sroot(sb) * sroot_tilde(stb);
    Cplx g;
    if (l == 1)
        g = -2.0 - bc_.ct[0] * bc_.c[1] - bc_.c[0] * bc_.ct[1] - 2.0 * root;
    else
        g = 2.0 + bc_.c[2] * bc_.ct[3] + bc_.ct[2] * bc_.c[3] + 2.0 * root;
    return g * u * (u + eta) * (u - eta) * (u + 0.5 * eta) * (u + 0.5 * eta) *
           (u + 1.5 * eta) * (u - 0.5 * eta) * (u + 2.0 * eta);
}

std::optional<Cplx> OpenTQ::x1(Cplx u, const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    const Cplx q1 = q(1, u, s);
    if (small(q1, 1)) return std::nullopt;
    return u * u * q(0, u + eta, s) * q(0, u, s) * fpoly(1, u, s.branch, s.branch_tilde) * q(2, -u - eta, s) / q1;
}

std::optional<Cplx> OpenTQ::x2(Cplx u, const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    const Cplx q3 = q(3, u, s);
    if (small(q3, 1)) return std::nullopt;
    return u * u * q(0, u + eta, s) * q(0, u, s) * q(0, -u, s) *
           fpoly(2, u, s.branch, s.branch_tilde) * q(2, -u - eta, s) / q3;
}

std::optional<Cplx> OpenTQ::z(int l, Cplx u, const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    const Cplx ql = q(l, u, s), qlm = q(l - 1, u, s);
    if (small(ql, 1) || small(qlm, 1)) return std::nullopt;
    const Cplx denom_a = u + 0.5 * eta;
    if (small(denom_a, 1)) return std::nullopt;
    if ((l == 2 || l == 3) && small(u + eta, 1)) return std::nullopt;
    const double sgn = l <= 2 ? 1.0 : -1.0;
    Cplx ratio;
    if (l <= 2)
        ratio = q(l - 1, u + eta, s) * q(l, u - eta, s) / (ql * qlm);
    else
        ratio = q(l - 1, u - eta, s) * q(l, u + eta, s) / (ql * qlm);
    return sgn * alpha(l, u) * q(0, u, s) * kfun(l, u, s.branch, s.branch_tilde) * ratio;
}

std::optional<Cplx> OpenTQ::zt(int l, Cplx u, const BetheState& s) const {
    auto base = z(l, u, s);
    if (!base) return std::nullopt;
    if (l == 1) {
        auto xx = x1(u, s);
        if (!xx) return std::nullopt;
        return *base + *xx;
    }
    if (l == 4) {
        auto xx = x2(u, s);
        if (!xx) return std::nullopt;
        return *base + *xx;
    }
    return base;
}

std::optional<Cplx> OpenTQ::lambda(Cplx u, const BetheState& s) const {
    Cplx acc{0, 0};
    for (int l = 1; l <= 4; ++l) {
        auto v = z(l, u, s);
        if (!v) return std::nullopt;
        acc += *v;
    }
    auto a = x1(u, s), b = x2(u, s);
    if (!a || !b) return std::nullopt;
    return acc + *a + *b;
}

std::optional<Cplx> OpenTQ::lambda1(Cplx u, const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    const Cplx up = u + 0.5 * eta, um = u - 0.5 * eta;
    const Cplx den = q(0, up, s) * up * um;
    if (small(den, 1)) return std::nullopt;
    Cplx acc{0, 0};
    for (int l = 1; l <= 4; ++l)
        for (int m = 1; m <= 2; ++m) {
            auto a = zt(l, up, s), b = zt(m, um, s);
            if (!a || !b) return std::nullopt;
            acc += *a * *b;
        }
    auto z1p = z(1, up, s), z2m = z(2, um, s), z4p = z(4, up, s), z3m = z(3, um, s);
    if (!z1p || !z2m || !z4p || !z3m) return std::nullopt;
    acc += -*z1p * *z2m + *z4p * *z3m;
    return -4.0 * u * u / den * acc;
}

std::optional<Cplx> OpenTQ::lambda2(Cplx u, const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    const Cplx up = u + 0.5 * eta, um = u - 0.5 * eta;
    const Cplx den = q(0, um, s) * up * um;
    if (small(den, 1)) return std::nullopt;
    Cplx acc{0, 0};
    for (int l = 1; l <= 4; ++l)
        for (int m = 3; m <= 4; ++m) {
            auto a = zt(l, up, s), b = zt(m, um, s);
            if (!a || !b) return std::nullopt;
            acc += *a * *b;
        }
    auto z1p = z(1, up, s), z2m = z(2, um, s), z4p = z(4, up, s);
    auto zrm = z(lambda2_reading_, um, s);
    if (!z1p || !z2m || !z4p || !zrm) return std::nullopt;
    acc += *z1p * *z2m - *z4p * *zrm;
    return -4.0 * u * u / den * acc;
}

std::vector<Cplx> OpenTQ::bae_residuals(const BetheState& s) const {
    const Cplx eta = cfg_.eta;
    std::vector<Cplx> out;
    auto balanced = [](std::initializer_list<Cplx> terms) {
        Cplx sum{0, 0};
        double mag = 1.0;
        for (Cplx t : terms) {
            sum += t;
            mag += std::abs(t);
        }
        return sum / mag;
    };
    const int br = s.branch, brt = s.branch_tilde;
    for (const Cplx& la : s.r1) {
        const Cplx t1 = la * (la + eta) * kfun(1, la, br, brt) * q(0, la + eta, s) *
                        q(1, la - eta, s) * q(2, la, s);
        const Cplx t2 =
            la * la * kfun(2, la, br, brt) * q(0, la, s) * q(1, la + eta, s) * q(2, la - eta, s);
        const Cplx t3 = (la + 0.5 * eta) * (la + eta) * la * la * q(0, la + eta, s) *
                        q(0, la, s) * fpoly(1, la, br, brt) * q(2, -la - eta, s) * q(2, la, s);
        out.push_back(balanced({t1, t2, t3}));
    }
    for (const Cplx& la : s.r2) {
        const Cplx t1 = kfun(2, la, br, brt) * q(1, la + eta, s) * q(3, la, s);
        const Cplx t2 = -kfun(3, la, br, brt) * q(3, la + eta, s) * q(1, la, s);
        out.push_back(balanced({t1, t2}));
    }
    for (const Cplx& la : s.r3) {
        const Cplx t1 =
            -la * kfun(3, la, br, brt) * q(0, la, s) * q(2, la - eta, s) * q(3, la + eta, s);
        const Cplx t2 =
            -(la + eta) * kfun(4, la, br, brt) * q(0, la, s) * q(3, la - eta, s) * q(2, la, s);
        const Cplx t3 = la * (la + 0.5 * eta) * (la + eta) * q(0, la + eta, s) * q(0, la, s) *
                        q(0, -la, s) * fpoly(2, la, br, brt) * q(2, -la - eta, s) * q(2, la, s);
        out.push_back(balanced({t1, t2, t3}));
    }
    return out;
}

std::vector<double> OpenTQ::condition_residuals(const Poly& lam, const Poly& lam1,
                                                const Poly& lam2, int sector_k) const {
    const Cplx eta = cfg_.eta;
    const int n = cfg_.N;
    std::vector<double> out;
    auto rr = [](Cplx lhs, Cplx rhs) {
        return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    };

    // 6N functional relations at x = +-theta_j.
    for (int j = 0; j < n; ++j) {
        for (int sgn : {+1, -1}) {
            const Cplx x = double(sgn) * cfg_.thetas[j];
            Cplx pp{1, 0}, pm{1, 0};
            for (const Cplx& th : cfg_.thetas) {
                pp *= (x - th + eta) * (x + th + eta);
                pm *= (x - th - eta) * (x + th - eta);
            }
            const Cplx c1 = -0.25 * x * (x + eta) / ((x + 0.5 * eta) * (x + 0.5 * eta)) * pp;
            out.push_back(rr(lam.eval(x) * lam.eval(x + eta), c1 * lam1.eval(x + 0.5 * eta)));
            const Cplx c2 = -0.25 * x * (x - eta) / ((x - 0.5 * eta) * (x - 0.5 * eta)) * pm;
            out.push_back(rr(lam.eval(x) * lam.eval(x - eta), c2 * lam2.eval(x - 0.5 * eta)));
            const Cplx num = (x + 0.5 * eta) * (x + 0.5 * eta) * (x - eta) * pm;
            const Cplx den = (x + eta) * (x - 0.5 * eta) * (x - 0.5 * eta) * pp;
            out.push_back(rr(lam.eval(x - eta) * lam1.eval(x + 0.5 * eta) * den,
                             lam.eval(x + eta) * lam2.eval(x - 0.5 * eta) * num));
        }
    }

    // 8 special values.
    const Cplx xx = 2.0 * bc_.xi * bc_.xi_tilde;
    const double s0 = std::max(1.0, lam.norm());
    const double s1 = std::max(1.0, lam1.norm());
    out.push_back(std::abs(lam.eval({0, 0})) / s0);
    out.push_back(std::abs(lam1.eval({0, 0})) / s1);
    out.push_back(std::abs(lam2.eval({0, 0})) / s1);
    out.push_back(rr(lam1.eval(0.5 * eta), -xx * lam.eval(eta)));
    out.push_back(rr(lam1.eval(-0.5 * eta), -xx * lam.eval(-eta)));
    out.push_back(rr(lam2.eval(0.5 * eta), xx * lam.eval(eta)));
    out.push_back(rr(lam2.eval(-0.5 * eta), xx * lam.eval(-eta)));
    out.push_back(std::abs(lam1.derivative().eval({0, 0}) + lam2.derivative().eval({0, 0})) /
                  std::max({1.0, std::abs(lam1.derivative().eval({0, 0})),
                            std::abs(lam2.derivative().eval({0, 0}))}));

    // 3 leading coefficients.
    BoundaryConfig b = bc_;
    const Cplx t_lead = -(b.c[0] * b.ct[1] + b.ct[0] * b.c[1] - b.c[2] * b.ct[3] -
                          b.ct[2] * b.c[3]);
    out.push_back(rr(lam.coeff(2 * n + 2), t_lead));
    {
        const Cplx a = b.c[2] * b.c[3] * b.ct[2] * b.ct[3] - b.ct[2] * b.c[3] -
                       b.c[2] * b.ct[3] - Cplx{1, 0};
        const Cplx u1 = Cplx{1, 0} + b.c[0] * b.ct[1], u2 = Cplx{1, 0} + b.ct[0] * b.c[1];
        const Cplx pair01 = b.c[0] * b.ct[1] + b.ct[0] * b.c[1];
        const Cplx pair23 = b.c[2] * b.ct[3] + b.ct[2] * b.c[3];
        out.push_back(rr(lam1.coeff(2 * n + 4),
                         -4.0 * (2.0 * a + u1 * u1 + u2 * u2 - pair01 * pair23)));
        const Cplx a2 = b.c[0] * b.c[1] * b.ct[0] * b.ct[1] - b.ct[0] * b.c[1] -
                        b.c[0] * b.ct[1] - Cplx{1, 0};
        const Cplx v1 = Cplx{1, 0} + b.c[2] * b.ct[3], v2 = Cplx{1, 0} + b.ct[2] * b.c[3];
        out.push_back(rr(lam2.coeff(2 * n + 4),
                         -4.0 * (2.0 * a2 + v1 * v1 + v2 * v2 - pair01 * pair23)));
    }

    // 2 sector-membership conditions on the sub-leading coefficients.
    {
        const std::vector<Cplx> ulev = u_hat_levels(n, bc_);
        const std::vector<Cplx> qlev = q_hat_levels(n, bc_);
        const Cplx uc = lam.coeff(2 * n + 1) / (-eta);
        const Cplx qc = lam1.coeff(2 * n + 3) / (-4.0 * eta);
        double ubest = 1e18, qbest = 1e18;
        if (sector_k >= 0 && sector_k <= n) {
            ubest = std::abs(uc - ulev[sector_k]);
            qbest = std::abs(qc - qlev[sector_k]);
        } else {
            for (const Cplx& lv : ulev) ubest = std::min(ubest, std::abs(uc - lv));
            for (const Cplx& lv : qlev) qbest = std::min(qbest, std::abs(qc - lv));
        }
        out.push_back(ubest / std::max(1.0, std::abs(uc)));
        out.push_back(qbest / std::max(1.0, std::abs(qc)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial reconstruction
// ---------------------------------------------------------------------------

Poly interpolate_on_circle(const std::function<std::optional<Cplx>(Cplx)>& f, int degree,
                           Cplx center, double radius, bool* ok) {
    // Oversampled DFT: exact for polynomials up to degree m-1 and averaging
    // down the evaluation noise of the higher coefficients.
    const int m = 4 * (degree + 1);
    std::vector<Cplx> samples(m);
    for (int j = 0; j < m; ++j) {
        const double th = 2.0 * std::numbers::pi * j / m;
        const Cplx w = center + radius * Cplx{std::cos(th), std::sin(th)};
        auto v = f(w);
        if (!v) {
            if (ok) *ok = false;
            return Poly::zero();
        }
        samples[j] = *v;
    }
    std::vector<Cplx> coeffs(degree + 1);
    for (int k = 0; k <= degree; ++k) {
        Cplx acc{0, 0};
        for (int j = 0; j < m; ++j) {
            const double th = -2.0 * std::numbers::pi * j * k / m;
            acc += samples[j] * Cplx{std::cos(th), std::sin(th)};
        }
        coeffs[k] = acc / double(m) / std::pow(radius, k);
    }
    // shift back: p(u) = sum coeffs_k (u - center)^k
    Poly p = Poly::zero();
    Poly pw = Poly::constant({1, 0});
    const Poly base = Poly::linear(-center, 1);
    for (int k = 0; k <= degree; ++k) {
        p += pw * coeffs[k];
        pw *= base;
    }
    if (ok) *ok = true;
    return p;
}

double held_out_deviation(const std::function<std::optional<Cplx>(Cplx)>& f, const Poly& p,
                          Cplx center, double radius, int npoints) {
    double worst = 0;
    for (int j = 0; j < npoints; ++j) {
        const double th = 2.0 * std::numbers::pi * (j + 0.37) / npoints;
        const Cplx w = center + radius * Cplx{std::cos(th), std::sin(th)};
        auto v = f(w);
        if (!v) return 1e9;
        const double dev = std::abs(*v - p.eval(w)) / std::max(1.0, std::abs(*v));
        worst = std::max(worst, dev);
    }
    return worst;
}

double relative_residue(const std::function<std::optional<Cplx>(Cplx)>& f, Cplx z0, double rho,
                        int m) {
    Cplx acc{0, 0};
    double fmax = 0;
    for (int j = 0; j < m; ++j) {
        const double th = 2.0 * std::numbers::pi * j / m;
        const Cplx e{std::cos(th), std::sin(th)};
        auto v = f(z0 + rho * e);
        if (!v) return 1e9;
        acc += *v * e;
        fmax = std::max(fmax, std::abs(*v));
    }
    const double res = std::abs(acc) * rho / m;
    return res / std::max(1.0, fmax * rho);
}

PolynomialCertificate certify_polynomial(const std::function<std::optional<Cplx>(Cplx)>& f,
                                         int degree, const std::vector<Cplx>& pole_candidates,
                                         double scale_hint) {
    PolynomialCertificate cert;
    double extent = scale_hint;
    for (const Cplx& p : pole_candidates) extent = std::max(extent, std::abs(p));
    for (double factor : {2.1, 3.3, 4.7}) {
        const double radius = factor * (extent + 1.0);
        bool ok = false;
        Poly p = interpolate_on_circle(f, degree, {0.11, 0.073}, radius, &ok);
        if (!ok) continue;
        const double dev = held_out_deviation(f, p, {0.11, 0.073}, 0.57 * radius, 10);
        if (dev < cert.held_out) {
            cert.held_out = dev;
            cert.poly = p;
        }
        if (cert.held_out < 1e-8) break;
    }
    cert.max_residue = 0;
    for (const Cplx& z0 : pole_candidates)
        cert.max_residue = std::max(cert.max_residue, relative_residue(f, z0, 1e-3, 12));
    cert.ok = cert.held_out <= 1e-8 && cert.max_residue <= 1e-9;
    return cert;
}

}  // namespace su22
