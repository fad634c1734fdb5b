#include "su22/open_chain.hpp"

#include <stdexcept>

namespace su22 {

namespace {

const PolyOp& k_plus_for(const FusedKFamily& k, MonodromyKind kind) {
    switch (kind) {
        case MonodromyKind::fundamental: return k.k_plus;
        case MonodromyKind::bar: return k.kb_plus;
        case MonodromyKind::bar_prime: return k.kbp_plus;
        case MonodromyKind::tilde: return k.kt_plus;
        case MonodromyKind::tilde_prime: return k.ktp_plus;
    }
    throw std::logic_error("k_plus_for: bad kind");
}

const PolyOp& k_minus_for(const FusedKFamily& k, MonodromyKind kind) {
    switch (kind) {
        case MonodromyKind::fundamental: return k.k_minus;
        case MonodromyKind::bar: return k.kb_minus;
        case MonodromyKind::bar_prime: return k.kbp_minus;
        case MonodromyKind::tilde: return k.kt_minus;
        case MonodromyKind::tilde_prime: return k.ktp_minus;
    }
    throw std::logic_error("k_minus_for: bad kind");
}

}  // namespace

PolyOp open_transfer(const FusedRFamily& f, const FusedKFamily& k, MonodromyKind kind,
                     const ChainConfig& cfg) {
    const TensorLayout L = chain_layout(f, kind, cfg.N);
    const int pos0[] = {0};
    const PolyOp kp = embed(k_plus_for(k, kind), L, pos0);
    const PolyOp km = embed(k_minus_for(k, kind), L, pos0);
    const PolyOp t = monodromy_poly(f, kind, cfg);
    const PolyOp that = reflecting_monodromy_poly(f, kind, cfg);
    return super_partial_trace(kp * t * km * that, L, 0).trimmed(1e-13);
}

GradedOperator open_transfer_at(const FusedRFamily& f, const FusedKFamily& k, MonodromyKind kind,
                                Cplx u, const ChainConfig& cfg) {
    const TensorLayout L = chain_layout(f, kind, cfg.N);
    const PolyOp& kp = k_plus_for(k, kind);
    const PolyOp& km = k_minus_for(k, kind);
    const PolyOp& rk = fused_r_for(f, kind);
    const int pos0[] = {0};

    Mat acc = embed(kp.eval(u), L, pos0).mat;
    for (int j = 0; j < cfg.N; ++j) {
        const int pos[] = {0, j + 1};
        embed_apply_right(acc, rk.eval(u - cfg.thetas[j]), L, pos);
    }
    embed_apply_right(acc, km.eval(u), L, pos0);
    for (int j = cfg.N - 1; j >= 0; --j) {
        const int pos[] = {0, j + 1};
        embed_apply_right(acc, rk.eval(u + cfg.thetas[j]), L, pos);
    }
    return super_partial_trace(GradedOperator{L.composite(), L.composite(), std::move(acc)}, L, 0);
}

OpenTransferFamily build_open_family(const FusedRFamily& f, const FusedKFamily& k,
                                     const ChainConfig& cfg) {
    OpenTransferFamily fam;
    fam.cfg = cfg;
    fam.bc = k.bc;
    fam.t = open_transfer(f, k, MonodromyKind::fundamental, cfg);
    fam.t1 = open_transfer(f, k, MonodromyKind::bar, cfg);
    fam.t2 = open_transfer(f, k, MonodromyKind::bar_prime, cfg);
    return fam;
}

double check_reflecting_rtt(const FusedRFamily& f, Cplx u, Cplx v, const ChainConfig& cfg) {
    std::vector<GradedSpace> factors{f.proj.v, f.proj.v};
    for (int j = 0; j < cfg.N; ++j) factors.push_back(f.proj.v);
    const TensorLayout L(factors);
    auto reflecting = [&](int slot, Cplx x) {
        Mat acc = Mat::Identity(L.dim(), L.dim());
        for (int j = cfg.N - 1; j >= 0; --j) {
            const int pos[] = {slot, j + 2};
            embed_apply_right(acc, f.r.eval(x + cfg.thetas[j]), L, pos);
        }
        return acc;
    };
    const int p01[] = {0, 1};
    const Mat r = embed(f.r.eval(u - v), L, p01).mat;
    const Mat t1 = reflecting(0, u), t2 = reflecting(1, v);
    return rel_residual(r * t1 * t2, t2 * t1 * r);
}

std::vector<double> check_open_identities(const FusedRFamily& f, const FusedKFamily& k,
                                          const ChainConfig& cfg) {
    const Cplx eta = f.eta;
    OpenTransferFamily fam = build_open_family(f, k, cfg);
    std::vector<double> res;
    for (int j = 0; j < cfg.N; ++j) {
        for (int sgn : {+1, -1}) {
            const Cplx x = double(sgn) * cfg.thetas[j];
            Cplx prod_p{1, 0}, prod_m{1, 0};
            for (const Cplx& th : cfg.thetas) {
                prod_p *= (x - th + eta) * (x + th + eta);
                prod_m *= (x - th - eta) * (x + th - eta);
            }
            const Cplx c1 = -0.25 * x * (x + eta) / ((x + 0.5 * eta) * (x + 0.5 * eta)) * prod_p;
            res.push_back(rel_residual(fam.t.eval(x) * fam.t.eval(x + eta),
                                       fam.t1.eval(x + 0.5 * eta) * c1));
            const Cplx c2 = -0.25 * x * (x - eta) / ((x - 0.5 * eta) * (x - 0.5 * eta)) * prod_m;
            res.push_back(rel_residual(fam.t.eval(x) * fam.t.eval(x - eta),
                                       fam.t2.eval(x - 0.5 * eta) * c2));
            // third family in cleared form
            const Cplx num = (x + 0.5 * eta) * (x + 0.5 * eta) * (x - eta) * prod_m;
            const Cplx den = (x + eta) * (x - 0.5 * eta) * (x - 0.5 * eta) * prod_p;
            res.push_back(rel_residual(
                fam.t.eval(x - eta) * fam.t1.eval(x + 0.5 * eta) * den,
                fam.t.eval(x + eta) * fam.t2.eval(x - 0.5 * eta) * num));
        }
    }
    return res;
}

std::vector<double> check_open_tilde_identities(const FusedRFamily& f, const FusedKFamily& k,
                                                const ChainConfig& cfg) {
    const Cplx eta = f.eta;
    OpenTransferFamily fam = build_open_family(f, k, cfg);
    std::vector<double> res;
    for (int j = 0; j < cfg.N; ++j) {
        for (int sgn : {+1, -1}) {
            const Cplx x = double(sgn) * cfg.thetas[j];
            Cplx prod_p{1, 0}, prod_m{1, 0};
            for (const Cplx& th : cfg.thetas) {
                prod_p *= (x - th + eta) * (x + th + eta);
                prod_m *= (x - th - eta) * (x + th - eta);
            }
            const GradedOperator tt1 = open_transfer_at(f, k, MonodromyKind::tilde, x, cfg);
            const Cplx c1 = -0.5 * (x + 0.5 * eta) * (x - eta) / (x * (x - 0.5 * eta)) * prod_m;
            res.push_back(rel_residual(fam.t.eval(x - eta) * fam.t1.eval(x + 0.5 * eta),
                                       tt1 * c1));
            const GradedOperator tt2 = open_transfer_at(f, k, MonodromyKind::tilde_prime, x, cfg);
            const Cplx c2 = -0.5 * (x - 0.5 * eta) * (x + eta) / (x * (x + 0.5 * eta)) * prod_p;
            res.push_back(rel_residual(fam.t.eval(x + eta) * fam.t2.eval(x - 0.5 * eta),
                                       tt2 * c2));
        }
    }
    return res;
}

double OpenSpecialValues::worst() const {
    return std::max({t_zero, t1_zero, t2_zero, t1_plus, t1_minus, t2_plus, t2_minus,
                     derivative_sum});
}

OpenSpecialValues check_open_special_values(const OpenTransferFamily& fam) {
    const Cplx eta = fam.cfg.eta;
    const Cplx xx = 2.0 * fam.bc.xi * fam.bc.xi_tilde;
    OpenSpecialValues sv{};
    const double scale = std::max(1.0, fam.t.norm());
    const double scale1 = std::max(1.0, fam.t1.norm());
    sv.t_zero = fam.t.eval({0, 0}).mat.norm() / scale;
    sv.t1_zero = fam.t1.eval({0, 0}).mat.norm() / scale1;
    sv.t2_zero = fam.t2.eval({0, 0}).mat.norm() / scale1;
    sv.t1_plus = rel_residual(fam.t1.eval(0.5 * eta), fam.t.eval(eta) * (-xx));
    sv.t1_minus = rel_residual(fam.t1.eval(-0.5 * eta), fam.t.eval(-eta) * (-xx));
    sv.t2_plus = rel_residual(fam.t2.eval(0.5 * eta), fam.t.eval(eta) * xx);
    sv.t2_minus = rel_residual(fam.t2.eval(-0.5 * eta), fam.t.eval(-eta) * xx);
    const GradedOperator d1 = fam.t1.derivative().eval({0, 0});
    const GradedOperator d2 = fam.t2.derivative().eval({0, 0});
    sv.derivative_sum = (d1 + d2).mat.norm() / std::max({1.0, d1.mat.norm(), d2.mat.norm()});
    return sv;
}

namespace {

Cplx pair01(const BoundaryConfig& b) { return b.c[0] * b.ct[1] + b.ct[0] * b.c[1]; }
Cplx pair23(const BoundaryConfig& b) { return b.c[2] * b.ct[3] + b.ct[2] * b.c[3]; }

Cplx t_leading_scalar(const BoundaryConfig& b) { return -(pair01(b) - pair23(b)); }

Cplx t1_leading_scalar(const BoundaryConfig& b) {
    const Cplx a = b.c[2] * b.c[3] * b.ct[2] * b.ct[3] - b.ct[2] * b.c[3] - b.c[2] * b.ct[3] -
                   Cplx{1, 0};
    const Cplx s1 = Cplx{1, 0} + b.c[0] * b.ct[1];
    const Cplx s2 = Cplx{1, 0} + b.ct[0] * b.c[1];
    return -4.0 * (2.0 * a + s1 * s1 + s2 * s2 - pair01(b) * pair23(b));
}

Cplx t2_leading_scalar_symmetric(const BoundaryConfig& b) {
    const Cplx a = b.c[0] * b.c[1] * b.ct[0] * b.ct[1] - b.ct[0] * b.c[1] - b.c[0] * b.ct[1] -
                   Cplx{1, 0};
    const Cplx s1 = Cplx{1, 0} + b.c[2] * b.ct[3];
    const Cplx s2 = Cplx{1, 0} + b.ct[2] * b.c[3];
    return -4.0 * (2.0 * a + s1 * s1 + s2 * s2 - pair01(b) * pair23(b));
}

Cplx t2_leading_scalar_printed(const BoundaryConfig& b) {
    const Cplx a = b.c[0] * b.c[1] * b.ct[0] * b.ct[1] - b.ct[0] * b.c[1] - b.c[0] * b.ct[1] -
                   Cplx{1, 0};
    const Cplx s1 = Cplx{1, 0} + b.c[2] * b.ct[3];
    const Cplx s2 = Cplx{1, 0} + b.ct[2] * b.c[3];
    return -4.0 * (2.0 * a + s1 * s1 + s2 * s2 - pair01(b) * (b.c[2] * b.ct[3]) +
                   b.ct[2] * b.c[3]);
}

double diagonality(const Mat& m) {
    Mat off = m;
    off.diagonal().setZero();
    return off.norm() / std::max(1.0, m.norm());
}

}  // namespace

OpenAsymptotics check_open_asymptotics(const OpenTransferFamily& fam) {
    const int n = fam.cfg.N;
    const Cplx eta = fam.cfg.eta;
    OpenAsymptotics a{};
    const long dim = fam.t.codomain().dim;
    const Mat id = Mat::Identity(dim, dim);

    auto coeff_or_zero = [&](const PolyOp& p, int k) {
        return k <= p.degree() ? p.coeff(k) : Mat::Zero(dim, dim);
    };

    a.t_leading = rel_residual(coeff_or_zero(fam.t, 2 * n + 2),
                               Mat(id * t_leading_scalar(fam.bc)));
    a.t1_leading = rel_residual(coeff_or_zero(fam.t1, 2 * n + 4),
                                Mat(id * t1_leading_scalar(fam.bc)));
    a.t2_leading_symmetric = rel_residual(coeff_or_zero(fam.t2, 2 * n + 4),
                                          Mat(id * t2_leading_scalar_symmetric(fam.bc)));
    a.t2_leading_printed = rel_residual(coeff_or_zero(fam.t2, 2 * n + 4),
                                        Mat(id * t2_leading_scalar_printed(fam.bc)));

    double excess = 0;
    for (int k = 2 * n + 3; k <= fam.t.degree(); ++k) excess += fam.t.coeff_norm(k);
    a.t_degree_excess = excess / std::max(1.0, fam.t.norm());
    excess = 0;
    for (int k = 2 * n + 5; k <= fam.t1.degree(); ++k) excess += fam.t1.coeff_norm(k);
    a.t1_degree_excess = excess / std::max(1.0, fam.t1.norm());

    const Mat uhat_coeff = coeff_or_zero(fam.t, 2 * n + 1);
    const Mat qhat_coeff = coeff_or_zero(fam.t1, 2 * n + 3);
    a.u_hat = rel_residual(uhat_coeff, Mat(u_hat_operator(n, fam.bc).mat * (-eta)));
    a.q_hat = rel_residual(qhat_coeff, Mat(q_hat_operator(n, fam.bc).mat * (-4.0 * eta)));
    a.u_hat_diagonality = diagonality(uhat_coeff);
    a.q_hat_diagonality = diagonality(qhat_coeff);
    return a;
}

GradedOperator u_hat_operator(int n, const BoundaryConfig& bc) {
    const GradedSpace v = GradedSpace::fundamental();
    const Cplx aa = Cplx{2, 0} + pair01(bc);
    const Cplx bb = Cplx{2, 0} + pair23(bc);
    Mat site = Mat::Zero(4, 4);
    site(0, 0) = aa; site(1, 1) = aa; site(2, 2) = bb; site(3, 3) = bb;
    std::vector<GradedSpace> factors(n, v);
    const TensorLayout L(factors);
    Mat acc = Mat::Zero(L.dim(), L.dim());
    for (int j = 0; j < n; ++j) {
        const int pos[] = {j};
        acc += embed(GradedOperator{v, v, site}, L, pos).mat;
    }
    return {L.composite(), L.composite(), std::move(acc)};
}

GradedOperator q_hat_operator(int n, const BoundaryConfig& bc) {
    const GradedSpace v = GradedSpace::fundamental();
    const Cplx p1 = bc.c[0] * bc.ct[1], p2 = bc.ct[0] * bc.c[1];
    const Cplx alpha = Cplx{2, 0} - 2.0 * bc.ct[0] * bc.ct[1] + 4.0 * p1 + p1 * p1 + 4.0 * p2 -
                       2.0 * bc.c[0] * bc.c[1] + p2 * p2;
    const Cplx q1 = bc.c[2] * bc.ct[3], q2 = bc.ct[2] * bc.c[3];
    const Cplx beta = Cplx{2, 0} - 2.0 * bc.ct[2] * bc.ct[3] - p1 * p1 - p2 * p2 -
                      4.0 * bc.c[0] * bc.c[1] * bc.ct[0] * bc.ct[1] + 4.0 * q1 +
                      2.0 * p1 * q1 + 2.0 * p2 * q1 + 4.0 * q2 + 2.0 * p1 * q2 +
                      2.0 * p2 * q2 - 2.0 * bc.c[2] * bc.c[3];
    Mat site = Mat::Zero(4, 4);
    site(0, 0) = alpha; site(1, 1) = alpha; site(2, 2) = beta; site(3, 3) = beta;
    std::vector<GradedSpace> factors(n, v);
    const TensorLayout L(factors);
    Mat acc = Mat::Zero(L.dim(), L.dim());
    for (int j = 0; j < n; ++j) {
        const int pos[] = {j};
        acc += embed(GradedOperator{v, v, site}, L, pos).mat;
    }
    return {L.composite(), L.composite(), std::move(acc)};
}

std::vector<Cplx> u_hat_levels(int n, const BoundaryConfig& bc) {
    const Cplx aa = Cplx{2, 0} + pair01(bc);
    const Cplx bb = Cplx{2, 0} + pair23(bc);
    std::vector<Cplx> levels;
    for (int k = 0; k <= n; ++k) levels.push_back(double(n) * aa + double(k) * (bb - aa));
    return levels;
}

std::vector<Cplx> q_hat_levels(int n, const BoundaryConfig& bc) {
    const Cplx p1 = bc.c[0] * bc.ct[1], p2 = bc.ct[0] * bc.c[1];
    const Cplx alpha = Cplx{2, 0} - 2.0 * bc.ct[0] * bc.ct[1] + 4.0 * p1 + p1 * p1 + 4.0 * p2 -
                       2.0 * bc.c[0] * bc.c[1] + p2 * p2;
    const Cplx s01 = pair01(bc), s23 = pair23(bc);
    const Cplx step = 2.0 * s01 * s23 - 2.0 * s01 * s01 + 4.0 * (s23 - s01);
    std::vector<Cplx> levels;
    for (int k = 0; k <= n; ++k) levels.push_back(double(n) * alpha + double(k) * step);
    return levels;
}

long level_multiplicity(int n, int k) {
    long binom = 1;
    for (int i = 1; i <= k; ++i) binom = binom * (n - i + 1) / i;
    long pw = 1;
    for (int i = 0; i < n; ++i) pw *= 2;
    return binom * pw;
}

OpenDecompositions check_open_decompositions(const FusedRFamily& f, const FusedKFamily& k,
                                             const ChainConfig& cfg) {
    OpenDecompositions out{};
    const Cplx eta = f.eta;
    OpenTransferFamily fam = build_open_family(f, k, cfg);
    const GradedSpace& V = f.proj.v;

    Poly prod_pp = Poly::constant({1, 0});  // prod (u - th + eta)(u + th + eta)
    Poly prod_mm = Poly::constant({1, 0});  // prod (u - th - eta)(u + th - eta)
    Poly prod_00 = Poly::constant({1, 0});  // prod (u - th)(u + th)
    for (const Cplx& th : cfg.thetas) {
        prod_pp *= Poly::linear(eta - th, 1) * Poly::linear(eta + th, 1);
        prod_mm *= Poly::linear(-eta - th, 1) * Poly::linear(-eta + th, 1);
        prod_00 *= Poly::linear(-th, 1) * Poly::linear(th, 1);
    }
    const Poly u_poly = Poly::x();

    // rho2(2u+eta) t(u) t(u+eta) = (u+eta) u { prod_pp t1(u+eta/2) + prod_00 t2(u+eta/2) }
    {
        const Poly rho2_arg = Poly::linear(eta, 2);
        const Poly lhs_scalar = rho2_arg * rho2_arg * Cplx{-1, 0};
        const PolyOp lhs = (fam.t * fam.t.shifted(eta)).mul_scalar(lhs_scalar);
        const Poly uu = u_poly * Poly::linear(eta, 1);
        const PolyOp rhs = fam.t1.shifted(0.5 * eta).mul_scalar(uu * prod_pp) +
                           fam.t2.shifted(0.5 * eta).mul_scalar(uu * prod_00);
        out.product_rule = rel_residual(lhs, rhs);
    }

    GradedSpace quantum = V;
    for (int j = 1; j < cfg.N; ++j) quantum = tensor(quantum, V);

    // Complement sandwich for the first tilde rule on [Vbar, V, sites].
    auto complement_term = [&](bool prime) {
        const GradedSpace aux = prime ? f.proj.vbarp : f.proj.vbar;
        const Projector& p20 = prime ? f.proj.p20t : f.proj.p20;
        const PolyOp& rbar = prime ? f.r_bar_prime : f.r_bar;
        const PolyOp& kbm = prime ? k.kbp_minus : k.kb_minus;
        const PolyOp& kbp = prime ? k.kbp_plus : k.kb_plus;
        const Cplx s = prime ? -0.5 * eta : 0.5 * eta;   // shift of the fused slot
        const Cplx s2 = prime ? eta : -eta;              // shift of the fundamental slot
        std::vector<GradedSpace> factors{aux, V};
        for (int j = 0; j < cfg.N; ++j) factors.push_back(V);
        const TensorLayout L(factors);
        const GradedOperator q =
            super_tensor(p20.complement(), GradedOperator::identity(quantum));
        const int pos0[] = {0}, pos1[] = {1}, pos01[] = {0, 1};

        // group 1: K2+(u+s2) R(-2u + ...) Kbar+(u+s)
        const Cplx mid_shift = prime ? -0.5 * eta : 0.5 * eta;
        const PolyOp g1 = embed(k.k_plus.shifted(s2), L, pos1) *
                          embed(rbar.composed(-2, mid_shift), L, pos01) *
                          embed(kbp.shifted(s), L, pos0);
        // group 2: Tbar(u+s) T2(u+s2)
        PolyOp g2 = PolyOp::constant(GradedOperator::identity(L.composite()));
        for (int j = 0; j < cfg.N; ++j) {
            const int pos[] = {0, j + 2};
            g2 = g2 * embed(rbar.shifted(s - cfg.thetas[j]), L, pos);
        }
        for (int j = 0; j < cfg.N; ++j) {
            const int pos[] = {1, j + 2};
            g2 = g2 * embed(f.r.shifted(s2 - cfg.thetas[j]), L, pos);
        }
        // group 3: Kbar-(u+s) R(2u - ...) K2-(u+s2)
        const PolyOp g3 = embed(kbm.shifted(s), L, pos0) *
                          embed(rbar.composed(2, -mid_shift), L, pos01) *
                          embed(k.k_minus.shifted(s2), L, pos1);
        // group 4: Thatbar(u+s) That2(u+s2)
        PolyOp g4 = PolyOp::constant(GradedOperator::identity(L.composite()));
        for (int j = cfg.N - 1; j >= 0; --j) {
            const int pos[] = {0, j + 2};
            g4 = g4 * embed(rbar.shifted(s + cfg.thetas[j]), L, pos);
        }
        for (int j = cfg.N - 1; j >= 0; --j) {
            const int pos[] = {1, j + 2};
            g4 = g4 * embed(f.r.shifted(s2 + cfg.thetas[j]), L, pos);
        }
        const PolyOp qq = PolyOp::constant(q);
        PolyOp m = qq * g1 * qq * g2 * qq * g3 * qq * g4 * qq;
        PolyOp traced = super_partial_trace(m, L, 0);
        return super_partial_trace(traced, L.without_factor(0), 0);
    };

    // rho4(2u - eta/2) t1(u+eta/2) t(u-eta) =
    //   (2u+eta)(u-eta) { prod_mm ttilde1(u) + prod_00 tbar1(u) }
    {
        const Poly rho4_arg = Poly::linear(0, 2) * Poly::linear(-eta, 2) * Cplx{-1, 0};
        const PolyOp lhs = (fam.t1.shifted(0.5 * eta) * fam.t.shifted(-eta)).mul_scalar(rho4_arg);
        const PolyOp ttilde1 = open_transfer(f, k, MonodromyKind::tilde, cfg);
        const Poly front = Poly::linear(eta, 2) * Poly::linear(-eta, 1);
        const PolyOp complement = complement_term(false);
        const PolyOp tbar1 =
            complement.divide_exact(front * prod_00, &out.complement_rem_1).trimmed(1e-11);
        const PolyOp rhs = ttilde1.mul_scalar(front * prod_mm) +
                           tbar1.mul_scalar(front * prod_00);
        out.tilde_rule_1 = rel_residual(lhs, rhs);
    }

    // rho6(2u + eta/2) t2(u-eta/2) t(u+eta) =
    //   (2u-eta)(u+eta) { prod_pp ttilde2(u) + prod_00 tbar2(u) }
    {
        const Poly rho6_arg = Poly::linear(0, 2) * Poly::linear(eta, 2) * Cplx{-1, 0};
        const PolyOp lhs = (fam.t2.shifted(-0.5 * eta) * fam.t.shifted(eta)).mul_scalar(rho6_arg);
        const PolyOp ttilde2 = open_transfer(f, k, MonodromyKind::tilde_prime, cfg);
        const Poly front = Poly::linear(-eta, 2) * Poly::linear(eta, 1);
        const PolyOp complement = complement_term(true);
        const PolyOp tbar2 =
            complement.divide_exact(front * prod_00, &out.complement_rem_2).trimmed(1e-11);
        const PolyOp rhs = ttilde2.mul_scalar(front * prod_pp) +
                           tbar2.mul_scalar(front * prod_00);
        out.tilde_rule_2 = rel_residual(lhs, rhs);

        out.tilde_equal =
            rel_residual(open_transfer(f, k, MonodromyKind::tilde, cfg), ttilde2);
    }
    return out;
}

GradedOperator hamiltonian_open(const FusedRFamily& f, const FusedKFamily& k, int n) {
    const ChainConfig cfg = ChainConfig::homogeneous(n, f.eta);
    const PolyOp t = open_transfer(f, k, MonodromyKind::fundamental, cfg);
    const Mat c0 = t.coeff(0);
    if (c0.norm() > 1e-8 * std::max(1.0, t.norm()))
        throw std::runtime_error("hamiltonian_open: t(0) unexpectedly nonzero");
    const Mat c1 = t.coeff(1);
    const Mat c2 = t.degree() >= 2 ? t.coeff(2) : Mat::Zero(c1.rows(), c1.cols());
    Eigen::PartialPivLU<Mat> lu(c1.transpose());
    if (std::abs(lu.determinant()) < 1e-300)
        throw std::runtime_error("hamiltonian_open: t'(0) is singular");
    const Mat h = 0.5 * lu.solve(c2.transpose()).transpose();
    GradedSpace quantum = f.proj.v;
    for (int j = 1; j < n; ++j) quantum = tensor(quantum, f.proj.v);
    return {quantum, quantum, h};
}

}  // namespace su22
