#include "su22/periodic.hpp"

#include <stdexcept>

namespace su22 {

ChainConfig::ChainConfig(int n, Cplx e, std::vector<Cplx> th)
    : N(n), eta(e), thetas(std::move(th)) {
    if (N < 1) throw std::invalid_argument("ChainConfig: N must be >= 1");
    if (static_cast<int>(thetas.size()) != N)
        throw std::invalid_argument("ChainConfig: need one theta per site");
    if (eta == Cplx{0, 0}) throw std::invalid_argument("ChainConfig: eta must be nonzero");
}

ChainConfig ChainConfig::homogeneous(int n, Cplx e) {
    return ChainConfig(n, e, std::vector<Cplx>(n, Cplx{0, 0}));
}

bool ChainConfig::thetas_generic(double tol) const {
    for (int j = 0; j < N; ++j)
        for (int l = 0; l < j; ++l) {
            const Cplx d = thetas[j] - thetas[l];
            if (std::abs(d) < tol || std::abs(d - eta) < tol || std::abs(d + eta) < tol)
                return false;
        }
    return true;
}

Poly ChainConfig::q0() const { return Poly::from_roots(thetas); }

const PolyOp& fused_r_for(const FusedRFamily& f, MonodromyKind kind) {
    switch (kind) {
        case MonodromyKind::fundamental: return f.r;
        case MonodromyKind::bar: return f.r_bar;
        case MonodromyKind::bar_prime: return f.r_bar_prime;
        case MonodromyKind::tilde: return f.r_tilde;
        case MonodromyKind::tilde_prime: return f.r_tilde_prime;
    }
    throw std::logic_error("fused_r_for: bad kind");
}

GradedSpace aux_space_for(const FusedRFamily& f, MonodromyKind kind) {
    switch (kind) {
        case MonodromyKind::fundamental: return f.proj.v;
        case MonodromyKind::bar: return f.proj.vbar;
        case MonodromyKind::bar_prime: return f.proj.vbarp;
        case MonodromyKind::tilde: return f.proj.vtil;
        case MonodromyKind::tilde_prime: return f.proj.vtilp;
    }
    throw std::logic_error("aux_space_for: bad kind");
}

TensorLayout chain_layout(const FusedRFamily& f, MonodromyKind kind, int n) {
    std::vector<GradedSpace> factors{aux_space_for(f, kind)};
    for (int j = 0; j < n; ++j) factors.push_back(f.proj.v);
    return TensorLayout(std::move(factors));
}

PolyOp monodromy_poly(const FusedRFamily& f, MonodromyKind kind, const ChainConfig& cfg) {
    const PolyOp& rk = fused_r_for(f, kind);
    const TensorLayout L = chain_layout(f, kind, cfg.N);
    PolyOp t = PolyOp::constant(GradedOperator::identity(L.composite()));
    for (int j = 0; j < cfg.N; ++j) {
        const int pos[] = {0, j + 1};
        t = t * embed(rk.shifted(-cfg.thetas[j]), L, pos);
    }
    return t;
}

PolyOp reflecting_monodromy_poly(const FusedRFamily& f, MonodromyKind kind,
                                 const ChainConfig& cfg) {
    const PolyOp& rk = fused_r_for(f, kind);
    const TensorLayout L = chain_layout(f, kind, cfg.N);
    PolyOp t = PolyOp::constant(GradedOperator::identity(L.composite()));
    for (int j = cfg.N - 1; j >= 0; --j) {
        const int pos[] = {0, j + 1};
        t = t * embed(rk.shifted(cfg.thetas[j]), L, pos);
    }
    return t;
}

GradedOperator monodromy_at(const FusedRFamily& f, MonodromyKind kind, Cplx u,
                            const ChainConfig& cfg, bool reflecting) {
    const PolyOp& rk = fused_r_for(f, kind);
    const TensorLayout L = chain_layout(f, kind, cfg.N);
    Mat acc;
    bool first = true;
    auto factor_arg = [&](int j) {
        return reflecting ? u + cfg.thetas[j] : u - cfg.thetas[j];
    };
    std::vector<int> order(cfg.N);
    for (int j = 0; j < cfg.N; ++j) order[j] = reflecting ? cfg.N - 1 - j : j;
    for (int idx : order) {
        const int pos[] = {0, idx + 1};
        const GradedOperator rj = rk.eval(factor_arg(idx));
        if (first) {
            acc = embed(rj, L, pos).mat;
            first = false;
        } else {
            embed_apply_right(acc, rj, L, pos);
        }
    }
    return {L.composite(), L.composite(), std::move(acc)};
}

PolyOp periodic_transfer(const FusedRFamily& f, MonodromyKind kind, const ChainConfig& cfg) {
    const TensorLayout L = chain_layout(f, kind, cfg.N);
    return super_partial_trace(monodromy_poly(f, kind, cfg), L, 0);
}

GradedOperator periodic_transfer_at(const FusedRFamily& f, MonodromyKind kind, Cplx u,
                                    const ChainConfig& cfg) {
    const TensorLayout L = chain_layout(f, kind, cfg.N);
    return super_partial_trace(monodromy_at(f, kind, u, cfg), L, 0);
}

TransferFamily build_periodic_family(const FusedRFamily& f, const ChainConfig& cfg) {
    TransferFamily fam;
    fam.cfg = cfg;
    fam.t = periodic_transfer(f, MonodromyKind::fundamental, cfg).trimmed(1e-12);
    fam.t1 = periodic_transfer(f, MonodromyKind::bar, cfg).trimmed(1e-12);
    fam.t2 = periodic_transfer(f, MonodromyKind::bar_prime, cfg).trimmed(1e-12);
    return fam;
}

double check_rtt(const FusedRFamily& f, MonodromyKind kind, Cplx u, Cplx v,
                 const ChainConfig& cfg) {
    // R_12(u-v) T_1(u) T_2(v) = T_2(v) T_1(u) R_12(u-v) with the kind's aux
    // space first and a fundamental companion second.
    std::vector<GradedSpace> factors{aux_space_for(f, kind), f.proj.v};
    for (int j = 0; j < cfg.N; ++j) factors.push_back(f.proj.v);
    const TensorLayout L(factors);
    const PolyOp& rk = fused_r_for(f, kind);

    const int p01[] = {0, 1};
    const GradedOperator rmix = embed(rk.eval(u - v), L, p01);
    Mat t1m, t2m;
    {
        Mat acc = Mat::Identity(L.dim(), L.dim());
        for (int j = 0; j < cfg.N; ++j) {
            const int pos[] = {0, j + 2};
            embed_apply_right(acc, rk.eval(u - cfg.thetas[j]), L, pos);
        }
        t1m = std::move(acc);
    }
    {
        Mat acc = Mat::Identity(L.dim(), L.dim());
        for (int j = 0; j < cfg.N; ++j) {
            const int pos[] = {1, j + 2};
            embed_apply_right(acc, f.r.eval(v - cfg.thetas[j]), L, pos);
        }
        t2m = std::move(acc);
    }
    const Mat lhs = rmix.mat * t1m * t2m;
    const Mat rhs = t2m * t1m * rmix.mat;
    return rel_residual(lhs, rhs);
}

namespace {

// Two-auxiliary monodromy product with a projector sandwich compressed to the
// fused auxiliary space, as a PolyOp on the fused chain layout. slot0_first
// selects whether the slot-0 monodromy stands left of the slot-1 one.
PolyOp sandwich_monodromies(const FusedRFamily& f, const GradedSpace& aux_a,
                            const GradedSpace& aux_b, const PolyOp& r_a, const PolyOp& r_b,
                            Cplx shift_a, Cplx shift_b, const GradedOperator& compress,
                            const GradedOperator& expand, const ChainConfig& cfg,
                            bool slot0_first) {
    std::vector<GradedSpace> factors{aux_a, aux_b};
    for (int j = 0; j < cfg.N; ++j) factors.push_back(f.proj.v);
    const TensorLayout L(factors);

    GradedSpace quantum = f.proj.v;
    for (int j = 1; j < cfg.N; ++j) quantum = tensor(quantum, f.proj.v);
    const GradedOperator cq = super_tensor(compress, GradedOperator::identity(quantum));
    const GradedOperator eq = super_tensor(expand, GradedOperator::identity(quantum));

    PolyOp ta = PolyOp::constant(GradedOperator::identity(L.composite()));
    for (int j = 0; j < cfg.N; ++j) {
        const int pos[] = {0, j + 2};
        ta = ta * embed(r_a.shifted(shift_a - cfg.thetas[j]), L, pos);
    }
    PolyOp tb = PolyOp::constant(GradedOperator::identity(L.composite()));
    for (int j = 0; j < cfg.N; ++j) {
        const int pos[] = {1, j + 2};
        tb = tb * embed(r_b.shifted(shift_b - cfg.thetas[j]), L, pos);
    }
    const PolyOp mid = slot0_first ? ta * tb : tb * ta;
    return PolyOp::constant(cq) * mid * PolyOp::constant(eq);
}

Poly shifted_q0(const ChainConfig& cfg, Cplx shift) {
    // prod_j (u + shift - theta_j)
    std::vector<Cplx> roots;
    roots.reserve(cfg.N);
    for (const Cplx& th : cfg.thetas) roots.push_back(th - shift);
    return Poly::from_roots(roots);
}

}  // namespace

double check_monodromy_fusion(const FusedRFamily& f, int which, const ChainConfig& cfg) {
    const Cplx eta = f.eta;
    const GradedSpace& V = f.proj.v;
    switch (which) {
        case 0: {
            // p8 sandwich of T_2(u) T_1(u+eta) == prod(u - theta + eta) T_bar(u + eta/2);
            // the slot-1 monodromy (argument u) stands leftmost.
            PolyOp lhs = sandwich_monodromies(f, V, V, f.r, f.r, eta, Cplx{0, 0},
                                              f.proj.p8.compress(), f.proj.p8.expand(), cfg,
                                              /*slot0_first=*/false);
            PolyOp rhs = monodromy_poly(f, MonodromyKind::bar, cfg).shifted(0.5 * eta);
            return rel_residual(lhs, rhs.mul_scalar(shifted_q0(cfg, eta)));
        }
        case 1: {
            PolyOp lhs = sandwich_monodromies(f, V, V, f.r, f.r, -eta, Cplx{0, 0},
                                              f.proj.p8bar.compress(), f.proj.p8bar.expand(), cfg,
                                              /*slot0_first=*/false);
            PolyOp rhs = monodromy_poly(f, MonodromyKind::bar_prime, cfg).shifted(-0.5 * eta);
            return rel_residual(lhs, rhs.mul_scalar(shifted_q0(cfg, -eta)));
        }
        case 2: {
            PolyOp lhs = sandwich_monodromies(f, f.proj.vbar, V, f.r_bar, f.r, 0.5 * eta, -eta,
                                              f.proj.p20.compress(), f.proj.p20.expand(), cfg,
                                              /*slot0_first=*/true);
            PolyOp rhs = monodromy_poly(f, MonodromyKind::tilde, cfg);
            return rel_residual(lhs, rhs.mul_scalar(shifted_q0(cfg, -eta)));
        }
        case 3: {
            PolyOp lhs = sandwich_monodromies(f, f.proj.vbarp, V, f.r_bar_prime, f.r, -0.5 * eta,
                                              eta, f.proj.p20t.compress(), f.proj.p20t.expand(),
                                              cfg, /*slot0_first=*/true);
            PolyOp rhs = monodromy_poly(f, MonodromyKind::tilde_prime, cfg);
            return rel_residual(lhs, rhs.mul_scalar(shifted_q0(cfg, eta)));
        }
        default: throw std::invalid_argument("check_monodromy_fusion: which in 0..3");
    }
}

namespace {

// str over the leading aux pair of Q T_bar(x+sa) T_fund(x+sb) Q with the
// complement projector Q, evaluated pointwise with structured applies. The
// full operator-polynomial route would square matrices of dimension
// 32 * 4^N, which is needlessly heavy from N = 3 on.
GradedOperator complement_sandwich_at(const FusedRFamily& f, bool prime, Cplx x,
                                      const ChainConfig& cfg) {
    const GradedSpace& aux = prime ? f.proj.vbarp : f.proj.vbar;
    const Projector& p20 = prime ? f.proj.p20t : f.proj.p20;
    const PolyOp& rbar = prime ? f.r_bar_prime : f.r_bar;
    const Cplx sa = prime ? -0.5 * f.eta : 0.5 * f.eta;
    const Cplx sb = prime ? f.eta : -f.eta;
    std::vector<GradedSpace> factors{aux, f.proj.v};
    for (int j = 0; j < cfg.N; ++j) factors.push_back(f.proj.v);
    const TensorLayout L(factors);
    const int pos01[] = {0, 1};
    const GradedOperator q = p20.complement();
    Mat acc = embed(q, L, pos01).mat;
    for (int j = 0; j < cfg.N; ++j) {
        const int pos[] = {0, j + 2};
        embed_apply_right(acc, rbar.eval(x + sa - cfg.thetas[j]), L, pos);
    }
    for (int j = 0; j < cfg.N; ++j) {
        const int pos[] = {1, j + 2};
        embed_apply_right(acc, f.r.eval(x + sb - cfg.thetas[j]), L, pos);
    }
    embed_apply_right(acc, q, L, pos01);
    GradedOperator full{L.composite(), L.composite(), std::move(acc)};
    GradedOperator once = super_partial_trace(full, L, 0);
    return super_partial_trace(once, L.without_factor(0), 0);
}

std::vector<Cplx> decomposition_points(const ChainConfig& cfg) {
    // 2N+2 generic points clear of the inhomogeneities; the identities have
    // degree at most 2N-1, so agreement here certifies them as polynomials.
    std::vector<Cplx> pts;
    const int m = 2 * cfg.N + 2;
    for (int i = 0; i < m; ++i) {
        const double th = 2.0 * 3.14159265358979323846 * (i + 0.29) / m;
        pts.push_back(Cplx{1.31 * std::cos(th) + 0.051, 1.31 * std::sin(th) + 0.037});
    }
    return pts;
}

}  // namespace

PeriodicDecompositions check_periodic_decompositions(const FusedRFamily& f,
                                                     const ChainConfig& cfg) {
    PeriodicDecompositions out;
    const Cplx eta = f.eta;
    TransferFamily fam = build_periodic_family(f, cfg);

    // t(u) t(u+eta) = prod(u - th + eta) t1(u+eta/2) + prod(u - th) t2(u+eta/2)
    {
        const PolyOp lhs = fam.t * fam.t.shifted(eta);
        const PolyOp rhs = fam.t1.shifted(0.5 * eta).mul_scalar(shifted_q0(cfg, eta)) +
                           fam.t2.shifted(0.5 * eta).mul_scalar(shifted_q0(cfg, Cplx{0, 0}));
        out.product_rule = rel_residual(lhs, rhs);
    }

    // The two tilde rules, pointwise: the complement term is divisible by
    // prod(u - theta_j), certified by its vanishing at each theta_j.
    const std::vector<Cplx> pts = decomposition_points(cfg);
    auto run_rule = [&](bool prime, double* rule, double* rem) {
        double sandwich_scale = 1.0;
        double worst = 0;
        for (const Cplx& x : pts) {
            const GradedOperator m = complement_sandwich_at(f, prime, x, cfg);
            sandwich_scale = std::max(sandwich_scale, m.mat.norm());
            Cplx front{1, 0};
            for (const Cplx& th : cfg.thetas) front *= prime ? (x - th + eta) : (x - th - eta);
            const GradedOperator ttil = periodic_transfer_at(
                f, prime ? MonodromyKind::tilde_prime : MonodromyKind::tilde, x, cfg);
            const GradedOperator lhs =
                prime ? fam.t2.eval(x - 0.5 * eta) * fam.t.eval(x + eta)
                      : fam.t1.eval(x + 0.5 * eta) * fam.t.eval(x - eta);
            worst = std::max(worst, rel_residual(lhs, ttil * front + m));
        }
        double vanish = 0;
        for (const Cplx& th : cfg.thetas)
            vanish = std::max(vanish, complement_sandwich_at(f, prime, th, cfg).mat.norm());
        *rule = worst;
        *rem = vanish / sandwich_scale;
    };
    run_rule(false, &out.tilde_rule_1, &out.complement_rem_1);
    run_rule(true, &out.tilde_rule_2, &out.complement_rem_2);

    {
        double worst = 0;
        for (const Cplx& x : pts)
            worst = std::max(
                worst, rel_residual(periodic_transfer_at(f, MonodromyKind::tilde, x, cfg),
                                    periodic_transfer_at(f, MonodromyKind::tilde_prime, x, cfg)));
        out.tilde_equal = worst;
    }
    return out;
}

std::vector<double> check_fixed_point_identities(const FusedRFamily& f, const ChainConfig& cfg) {
    const Cplx eta = f.eta;
    TransferFamily fam = build_periodic_family(f, cfg);
    std::vector<double> res;

    auto prod_plus = [&](Cplx x) {
        Cplx p{1, 0};
        for (const Cplx& th : cfg.thetas) p *= x - th + eta;
        return p;
    };
    auto prod_minus = [&](Cplx x) {
        Cplx p{1, 0};
        for (const Cplx& th : cfg.thetas) p *= x - th - eta;
        return p;
    };

    for (int j = 0; j < cfg.N; ++j) {
        const Cplx th = cfg.thetas[j];
        const GradedOperator t_th = fam.t.eval(th);
        res.push_back(rel_residual(t_th * fam.t.eval(th + eta),
                                   fam.t1.eval(th + 0.5 * eta) * prod_plus(th)));
        res.push_back(rel_residual(t_th * fam.t.eval(th - eta),
                                   fam.t2.eval(th - 0.5 * eta) * prod_minus(th)));
    }
    // tilde-kind fixed points and the closed constraint, via point evaluation
    for (int j = 0; j < cfg.N; ++j) {
        const Cplx th = cfg.thetas[j];
        const GradedOperator tt1 = periodic_transfer_at(f, MonodromyKind::tilde, th, cfg);
        const GradedOperator tt2 = periodic_transfer_at(f, MonodromyKind::tilde_prime, th, cfg);
        res.push_back(rel_residual(fam.t1.eval(th + 0.5 * eta) * fam.t.eval(th - eta),
                                   tt1 * prod_minus(th)));
        res.push_back(rel_residual(fam.t2.eval(th - 0.5 * eta) * fam.t.eval(th + eta),
                                   tt2 * prod_plus(th)));
        // closed constraint among t, t1, t2 (cleared of the theta products)
        res.push_back(rel_residual(
            fam.t1.eval(th + 0.5 * eta) * fam.t.eval(th - eta) * prod_plus(th),
            fam.t2.eval(th - 0.5 * eta) * fam.t.eval(th + eta) * prod_minus(th)));
    }
    return res;
}

GradedOperator hamiltonian_periodic(const FusedRFamily& f, int n) {
    const ChainConfig cfg = ChainConfig::homogeneous(n, f.eta);
    const PolyOp t = periodic_transfer(f, MonodromyKind::fundamental, cfg).trimmed(1e-12);
    const Mat c0 = t.coeff(0);
    const Mat c1 = t.degree() >= 1 ? t.coeff(1) : Mat::Zero(c0.rows(), c0.cols());
    Eigen::PartialPivLU<Mat> lu(c0.transpose());
    if (std::abs(lu.determinant()) < 1e-300)
        throw std::runtime_error("hamiltonian_periodic: t(0) is singular");
    const Mat h = lu.solve(c1.transpose()).transpose();
    GradedSpace quantum = f.proj.v;
    for (int j = 1; j < n; ++j) quantum = tensor(quantum, f.proj.v);
    return {quantum, quantum, h};
}

}  // namespace su22
