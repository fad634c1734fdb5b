#include "su22/solver.hpp"

#include "su22/open_chain.hpp"

#include <algorithm>
#include <span>

namespace su22 {

namespace {

double norm2(const std::vector<Cplx>& v) {
    double s = 0;
    for (Cplx c : v) s += std::norm(c);
    return std::sqrt(s);
}

}  // namespace

double damped_newton(const std::function<std::vector<Cplx>(const std::vector<Cplx>&)>& f,
                     std::vector<Cplx>& x, const SolverOptions& opts) {
    const int m = static_cast<int>(x.size());
    if (m == 0) return norm2(f(x));
    std::vector<Cplx> fx = f(x);
    const int n = static_cast<int>(fx.size());
    double fn = norm2(fx);
    const double h = 1e-7;
    for (int it = 0; it < opts.max_iterations && fn > opts.tolerance; ++it) {
        Mat jac(n, m);
        for (int j = 0; j < m; ++j) {
            std::vector<Cplx> xp = x;
            xp[j] += h;
            const std::vector<Cplx> fp = f(xp);
            for (int i = 0; i < n; ++i) jac(i, j) = (fp[i] - fx[i]) / h;
        }
        Vec rhs(n);
        for (int i = 0; i < n; ++i) rhs(i) = fx[i];
        const Vec step = n == m ? Vec(jac.fullPivLu().solve(rhs))
                                : Vec(jac.colPivHouseholderQr().solve(rhs));
        if (!step.allFinite()) break;
        double alpha = 1.0;
        bool improved = false;
        for (int bt = 0; bt < 12; ++bt, alpha *= 0.5) {
            std::vector<Cplx> xn = x;
            for (int i = 0; i < m; ++i) xn[i] -= alpha * step(i);
            const std::vector<Cplx> fxn = f(xn);
            const double fnn = norm2(fxn);
            if (fnn < fn * (1.0 - 1e-4 * alpha)) {
                x = std::move(xn);
                fx = fxn;
                fn = fnn;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return fn;
}

// Real-variable Gauss-Newton for complex residuals, stacking real and
// imaginary parts.
double damped_newton_real(const std::function<std::vector<Cplx>(const std::vector<double>&)>& f,
                          std::vector<double>& x, const SolverOptions& opts) {
    const int m = static_cast<int>(x.size());
    auto norm_of = [](const std::vector<Cplx>& v) {
        double s = 0;
        for (Cplx c : v) s += std::norm(c);
        return std::sqrt(s);
    };
    std::vector<Cplx> fx = f(x);
    const int n = static_cast<int>(fx.size());
    double fn = norm_of(fx);
    const double h = 1e-7;
    for (int it = 0; it < opts.max_iterations && fn > opts.tolerance; ++it) {
        Eigen::MatrixXd jac(2 * n, m);
        for (int j = 0; j < m; ++j) {
            std::vector<double> xp = x;
            xp[j] += h;
            const std::vector<Cplx> fp = f(xp);
            for (int i = 0; i < n; ++i) {
                jac(i, j) = (std::real(fp[i]) - std::real(fx[i])) / h;
                jac(n + i, j) = (std::imag(fp[i]) - std::imag(fx[i])) / h;
            }
        }
        Eigen::VectorXd rhs(2 * n);
        for (int i = 0; i < n; ++i) {
            rhs(i) = std::real(fx[i]);
            rhs(n + i) = std::imag(fx[i]);
        }
        const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(rhs);
        if (!step.allFinite()) break;
        double alpha = 1.0;
        bool improved = false;
        for (int bt = 0; bt < 12; ++bt, alpha *= 0.5) {
            std::vector<double> xn = x;
            for (int i = 0; i < m; ++i) xn[i] -= alpha * step(i);
            const std::vector<Cplx> fxn = f(xn);
            const double fnn = norm_of(fxn);
            if (fnn < fn * (1.0 - 1e-4 * alpha)) {
                x = std::move(xn);
                fx = fxn;
                fn = fnn;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return fn;
}

namespace {

// Canonical representative of a root modulo the Q-function reflection
// lambda -> -lambda - m eta (m = 0 disables the fold).
Cplx canonical_root(Cplx r, Cplx eta, int m) {
    if (m == 0) return r;
    const Cplx mirror = -r - double(m) * eta;
    if (std::real(r) > std::real(mirror)) return r;
    if (std::real(r) < std::real(mirror)) return mirror;
    return std::imag(r) >= std::imag(mirror) ? r : mirror;
}

std::vector<Cplx> canonical_sorted(const std::vector<Cplx>& roots, Cplx eta, int m) {
    std::vector<Cplx> out;
    out.reserve(roots.size());
    for (Cplx r : roots) out.push_back(canonical_root(r, eta, m));
    std::sort(out.begin(), out.end(), [](Cplx a, Cplx b) {
        if (std::real(a) != std::real(b)) return std::real(a) < std::real(b);
        return std::imag(a) < std::imag(b);
    });
    return out;
}

bool same_state(const BetheState& a, const BetheState& b, Cplx eta, double tol, bool fold) {
    if (a.r1.size() != b.r1.size() || a.r2.size() != b.r2.size() || a.r3.size() != b.r3.size())
        return false;
    auto close = [tol](const std::vector<Cplx>& x, const std::vector<Cplx>& y) {
        for (size_t i = 0; i < x.size(); ++i)
            if (std::abs(x[i] - y[i]) > tol) return false;
        return true;
    };
    const int m1 = fold ? 1 : 0, m2 = fold ? 2 : 0, m3 = fold ? 1 : 0;
    return close(canonical_sorted(a.r1, eta, m1), canonical_sorted(b.r1, eta, m1)) &&
           close(canonical_sorted(a.r2, eta, m2), canonical_sorted(b.r2, eta, m2)) &&
           close(canonical_sorted(a.r3, eta, m3), canonical_sorted(b.r3, eta, m3));
}

BetheState unpack(const std::vector<Cplx>& x, int l1, int l2, int l3, int sector, int branch,
                  int branch_tilde) {
    BetheState s;
    s.sector_k = sector;
    s.branch = branch;
    s.branch_tilde = branch_tilde;
    s.r1.assign(x.begin(), x.begin() + l1);
    s.r2.assign(x.begin() + l1, x.begin() + l1 + l2);
    s.r3.assign(x.begin() + l1 + l2, x.begin() + l1 + l2 + l3);
    return s;
}

template <typename ResidualFn>
std::vector<SolvedState> multistart(ResidualFn&& residuals, int l1, int l2, int l3, int sector,
                                    int branch, Cplx eta, Rng& rng, const SolverOptions& opts,
                                    bool fold) {
    const int n = l1 + l2 + l3;
    std::vector<SolvedState> found;
    auto f = [&](const std::vector<Cplx>& x) {
        return residuals(unpack(x, l1, l2, l3, sector, branch, +1));
    };
    for (int start = 0; start < opts.starts; ++start) {
        std::vector<Cplx> x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.box(opts.seed_scale);
        const double fn = damped_newton(f, x, opts);
        if (fn > opts.tolerance) continue;
        BetheState s = unpack(x, l1, l2, l3, sector, branch, +1);
        bool dup = false;
        for (const SolvedState& other : found)
            if (same_state(s, other.state, eta, opts.dedup_tolerance, fold)) {
                dup = true;
                break;
            }
        if (dup) continue;
        found.push_back(SolvedState{std::move(s), fn, true});
    }
    return found;
}

}  // namespace

std::vector<SolvedState> solve_bae_periodic(const PeriodicTQ& tq, int l1, int l2, int l3,
                                            Rng rng, const SolverOptions& opts) {
    auto residuals = [&](const BetheState& s) { return tq.bae_residuals(s); };
    return multistart(residuals, l1, l2, l3, -1, +1, tq.cfg().eta, rng, opts, /*fold=*/false);
}

namespace {

// Q-level data in the quotient coordinate w = u(u + m eta): one monic
// polynomial P(w) per level, so that Q(u) = P(u (u + m eta)).
struct QuotientCoords {
    int l1, l2, l3;

    int unknowns() const { return l1 + l2 + l3; }

    static Cplx eval_monic(std::span<const Cplx> coeffs, Cplx w) {
        Cplx acc{1, 0};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * w + *it;
        return acc;
    }

    // Q^{(m)}(u) for the three root levels; m_eff = 1, 2, 1.
    Cplx q(int level, std::span<const Cplx> x, Cplx u, Cplx eta) const {
        const int m_eff = level == 2 ? 2 : 1;
        std::span<const Cplx> coeffs;
        if (level == 1) coeffs = x.subspan(0, l1);
        else if (level == 2) coeffs = x.subspan(l1, l2);
        else coeffs = x.subspan(l1 + l2, l3);
        return eval_monic(coeffs, u * (u + double(m_eff) * eta));
    }

    BetheState to_state(std::span<const Cplx> x, Cplx eta, int sector, int branch,
                        int branch_tilde) const {
        BetheState s;
        s.sector_k = sector;
        s.branch = branch;
        s.branch_tilde = branch_tilde;
        auto expand = [&](std::span<const Cplx> coeffs, int m_eff) {
            std::vector<Cplx> c(coeffs.begin(), coeffs.end());
            c.push_back({1, 0});
            std::vector<Cplx> mu = Poly(std::move(c)).roots();
            std::vector<Cplx> lam;
            const Cplx half = 0.5 * double(m_eff) * eta;
            for (Cplx m : mu) lam.push_back(-half + std::sqrt(m + half * half));
            return lam;
        };
        s.r1 = expand(x.subspan(0, l1), 1);
        s.r2 = expand(x.subspan(l1, l2), 2);
        s.r3 = expand(x.subspan(l1 + l2, l3), 1);
        return s;
    }
};

}  // namespace

std::vector<SolvedState> solve_bae_open(const OpenTQ& tq, int sector_k, int branch,
                                        int branch_tilde, Rng rng, const SolverOptions& opts,
                                        const Poly* lambda_target) {
    const int n = tq.cfg().N;
    return solve_bae_open_counts(tq, sector_k + n + 4, sector_k, 2 * n + sector_k + 4, sector_k,
                                 branch, branch_tilde, rng, opts, lambda_target);
}

std::vector<SolvedState> solve_bae_open_counts(const OpenTQ& tq, int l1, int l2, int l3,
                                               int sector_k, int branch, int branch_tilde,
                                               Rng rng, const SolverOptions& opts,
                                               const Poly* lambda_target) {
    const int n = tq.cfg().N;
    const Cplx eta = tq.cfg().eta;
    const BoundaryConfig& b = tq.bc();
    const QuotientCoords qc{l1, l2, l3};

    // Fixed Lambda coefficients when no target pins it.
    const Cplx t_lead =
        -(b.c[0] * b.ct[1] + b.ct[0] * b.c[1] - b.c[2] * b.ct[3] - b.ct[2] * b.c[3]);
    const Cplx u_sub = -eta * u_hat_levels(n, b)[sector_k];
    const int n_free_lam = lambda_target ? 0 : 2 * n;
    const int nvars = qc.unknowns() + n_free_lam;

    auto lambda_of = [&](std::span<const Cplx> x) {
        if (lambda_target) return *lambda_target;
        std::vector<Cplx> a(2 * n + 3, Cplx{0, 0});
        for (int i = 0; i < n_free_lam; ++i) a[i + 1] = x[qc.unknowns() + i];
        a[2 * n + 1] = u_sub;
        a[2 * n + 2] = t_lead;
        return Poly(std::move(a));
    };

    // Sample points for the cleared T-Q identity.
    std::vector<Cplx> probes;
    {
        const int npts = nvars + 8;
        for (int i = 0; i < npts; ++i) {
            const double th = 2.0 * 3.14159265358979323846 * (i + 0.23) / npts;
            const double rad = (i % 2 == 0) ? 0.83 : 1.57;
            probes.push_back(Cplx{rad * std::cos(th) + 0.031, rad * std::sin(th) + 0.049});
        }
    }

    auto q0 = [&](Cplx u) {
        Cplx p{1, 0};
        for (const Cplx& th : tq.cfg().thetas) p *= (u - th) * (u + th);
        return p;
    };

    auto residuals = [&](const std::vector<Cplx>& xv) {
        std::span<const Cplx> x(xv);
        const Poly lam = lambda_of(x);
        std::vector<Cplx> r;
        r.reserve(probes.size());
        for (const Cplx& u : probes) {
            const Cplx s = (u + 0.5 * eta) * (u + eta);
            const Cplx q1 = qc.q(1, x, u, eta), q2 = qc.q(2, x, u, eta), q3 = qc.q(3, x, u, eta);
            const Cplx q1p = qc.q(1, x, u + eta, eta), q1m = qc.q(1, x, u - eta, eta);
            const Cplx q2m = qc.q(2, x, u - eta, eta), q2r = qc.q(2, x, -u - eta, eta);
            const Cplx q3p = qc.q(3, x, u + eta, eta), q3m = qc.q(3, x, u - eta, eta);
            const Cplx t0 = lam.eval(u) * s * q1 * q2 * q3;
            const Cplx t1 =
                u * (u + eta) * tq.kfun(1, u, branch, branch_tilde) * q0(u + eta) * q1m * q2 * q3;
            const Cplx t2 =
                u * u * tq.kfun(2, u, branch, branch_tilde) * q0(u) * q1p * q2m * q3;
            const Cplx t3 =
                -u * u * tq.kfun(3, u, branch, branch_tilde) * q0(u) * q2m * q3p * q1;
            const Cplx t4 = -u * (u + eta) * tq.kfun(4, u, branch, branch_tilde) * q0(u) * q3m *
                            q1 * q2;
            const Cplx t5 = u * u * s * q0(u + eta) * q0(u) *
                            tq.fpoly(1, u, branch, branch_tilde) * q2r * q2 * q3;
            const Cplx t6 = u * u * s * q0(u + eta) * q0(u) * q0(-u) *
                            tq.fpoly(2, u, branch, branch_tilde) * q2r * q1 * q2;
            const Cplx total = t0 - t1 - t2 - t3 - t4 - t5 - t6;
            const double mag = 1.0 + std::abs(t0) + std::abs(t1) + std::abs(t2) + std::abs(t3) +
                               std::abs(t4) + std::abs(t5) + std::abs(t6);
            r.push_back(total / mag);
        }
        return r;
    };

    // With real eta, thetas, boundary data and target, the root multiset of a
    // genuine state is conjugation symmetric and the quotient coefficients are
    // real; solving over the reals halves the search dimension.
    bool real_mode = opts.allow_real_reduction && std::abs(std::imag(eta)) < 1e-14;
    for (const Cplx& th : tq.cfg().thetas) real_mode &= std::abs(std::imag(th)) < 1e-14;
    for (int i = 0; i < 4; ++i)
        real_mode &= std::abs(std::imag(b.c[i])) < 1e-14 && std::abs(std::imag(b.ct[i])) < 1e-14;
    real_mode &= std::abs(std::imag(b.xi)) < 1e-14 && std::abs(std::imag(b.xi_tilde)) < 1e-14;
    if (lambda_target)
        for (int kk = 0; kk <= lambda_target->degree(); ++kk)
            real_mode &= std::abs(std::imag(lambda_target->coeff(kk))) <
                         1e-10 * std::max(1.0, lambda_target->norm());

    // Seeds are drawn as conjugation-symmetric root configurations and
    // converted to coefficients; a uniform coefficient box would miss the
    // binomial growth of monic coefficients entirely.
    auto seed_level = [&](std::vector<Cplx>& x, int offset, int count, int m_eff) {
        std::vector<Cplx> mu;
        while (static_cast<int>(mu.size()) < count) {
            const Cplx lam = rng.box(opts.seed_scale);
            const Cplx m = lam * (lam + double(m_eff) * eta);
            if (real_mode && count - static_cast<int>(mu.size()) >= 2 && rng.uniform(0, 1) < 0.6) {
                mu.push_back(m);
                mu.push_back(std::conj(m));
            } else {
                mu.push_back(real_mode ? Cplx{std::real(m), 0.0} : m);
            }
        }
        const Poly p = Poly::from_roots(mu);
        for (int i = 0; i < count; ++i)
            x[offset + i] = real_mode ? Cplx{std::real(p.coeff(i)), 0.0} : p.coeff(i);
    };

    std::vector<SolvedState> found;
    auto accept = [&](std::span<const Cplx> x) {
        BetheState s = qc.to_state(x, eta, sector_k, branch, branch_tilde);
        double worst = 0;
        for (Cplx v : tq.bae_residuals(s)) worst = std::max(worst, std::abs(v));
        for (const SolvedState& other : found)
            if (same_state(s, other.state, eta, opts.dedup_tolerance, /*fold=*/true)) return;
        found.push_back(SolvedState{std::move(s), worst, true});
    };

    for (int start = 0; start < opts.starts; ++start) {
        std::vector<Cplx> x(nvars);
        seed_level(x, 0, qc.l1, 1);
        seed_level(x, qc.l1, qc.l2, 2);
        seed_level(x, qc.l1 + qc.l2, qc.l3, 1);
        for (int i = qc.unknowns(); i < nvars; ++i)
            x[i] = real_mode ? Cplx{rng.uniform(-opts.seed_scale, opts.seed_scale), 0.0}
                             : rng.box(opts.seed_scale);
        // A converged start is polished at a much tighter tolerance: the
        // downstream condition checks amplify root errors through the
        // Q-function products, so the extra Newton steps are not optional.
        SolverOptions polish = opts;
        polish.tolerance = 5e-13;
        polish.max_iterations = 40;
        double fn;
        if (real_mode) {
            std::vector<double> xr(nvars);
            for (int i = 0; i < nvars; ++i) xr[i] = std::real(x[i]);
            auto fr = [&](const std::vector<double>& v) {
                std::vector<Cplx> xc(nvars);
                for (int i = 0; i < nvars; ++i) xc[i] = Cplx{v[i], 0.0};
                return residuals(xc);
            };
            fn = damped_newton_real(fr, xr, opts);
            if (fn <= opts.tolerance) fn = damped_newton_real(fr, xr, polish);
            for (int i = 0; i < nvars; ++i) x[i] = Cplx{xr[i], 0.0};
        } else {
            fn = damped_newton(residuals, x, opts);
            if (fn <= opts.tolerance) fn = damped_newton(residuals, x, polish);
        }
        if (fn > opts.tolerance) continue;
        accept(std::span<const Cplx>(x));
    }
    return found;
}

}  // namespace su22
