#include "su22/boundary.hpp"

#include <stdexcept>

namespace su22 {

BoundaryConfig BoundaryConfig::checked(Cplx xi, Cplx xi_tilde, std::array<Cplx, 4> c,
                                       std::array<Cplx, 4> ct, double tol) {
    BoundaryConfig bc = unchecked(xi, xi_tilde, c, ct);
    if (bc.constraint_violation() > tol)
        throw std::invalid_argument(
            "BoundaryConfig: integrability constraint c1*c2 == c3*c4 violated");
    return bc;
}

BoundaryConfig BoundaryConfig::unchecked(Cplx xi, Cplx xi_tilde, std::array<Cplx, 4> c,
                                         std::array<Cplx, 4> ct) {
    BoundaryConfig bc;
    bc.xi = xi;
    bc.xi_tilde = xi_tilde;
    bc.c = c;
    bc.ct = ct;
    return bc;
}

bool BoundaryConfig::hermitian_mode(double tol) const {
    return std::abs(c[0] - std::conj(c[1])) < tol && std::abs(c[2] - std::conj(c[3])) < tol &&
           std::abs(ct[0] - std::conj(ct[1])) < tol && std::abs(ct[2] - std::conj(ct[3])) < tol;
}

double BoundaryConfig::constraint_violation() const {
    return std::max(std::abs(c[0] * c[1] - c[2] * c[3]), std::abs(ct[0] * ct[1] - ct[2] * ct[3]));
}

GradedOperator boundary_m_matrix(const std::array<Cplx, 4>& c) {
    const GradedSpace v = GradedSpace::fundamental();
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 1;  m(0, 1) = c[0];
    m(1, 0) = c[1]; m(1, 1) = -1;
    m(2, 2) = -1; m(2, 3) = c[2];
    m(3, 2) = c[3]; m(3, 3) = 1;
    return {v, v, std::move(m)};
}

PolyOp k_minus_poly(const BoundaryConfig& bc) {
    const GradedSpace v = GradedSpace::fundamental();
    return PolyOp::linear(GradedOperator::identity(v) * bc.xi, boundary_m_matrix(bc.c));
}

PolyOp k_plus_poly(const BoundaryConfig& bc) {
    const GradedSpace v = GradedSpace::fundamental();
    return PolyOp::linear(GradedOperator::identity(v) * bc.xi_tilde,
                          boundary_m_matrix(bc.ct) * Cplx{-1, 0});
}

GradedOperator k_minus(Cplx u, const BoundaryConfig& bc) { return k_minus_poly(bc).eval(u); }

GradedOperator k_plus(Cplx u, const BoundaryConfig& bc) { return k_plus_poly(bc).eval(u); }

namespace {

double reflection_residual(Cplx u, Cplx v, Cplx eta, const PolyOp& k1p, const PolyOp& k2p,
                           bool dual) {
    const GradedSpace V = GradedSpace::fundamental();
    const TensorLayout L({V, V});
    const int pos0[] = {0}, pos1[] = {1};
    auto r12 = [&](Cplx w) { return r_matrix(w, eta); };
    auto r21 = [&](Cplx w) { return exchange_factors(r_matrix(w, eta), V, V); };
    const GradedOperator k1 = embed(k1p.eval(u), L, pos0);
    const GradedOperator k2 = embed(k2p.eval(v), L, pos1);
    if (!dual) {
        const GradedOperator lhs = r12(u - v) * k1 * r21(u + v) * k2;
        const GradedOperator rhs = k2 * r12(u + v) * k1 * r21(u - v);
        return rel_residual(lhs, rhs);
    }
    const GradedOperator lhs = r12(v - u) * k1 * r21(-u - v) * k2;
    const GradedOperator rhs = k2 * r12(-u - v) * k1 * r21(v - u);
    return rel_residual(lhs, rhs);
}

}  // namespace

double check_reflection_equation(Cplx u, Cplx v, Cplx eta, const BoundaryConfig& bc) {
    return reflection_residual(u, v, eta, k_minus_poly(bc), k_minus_poly(bc), false);
}

double check_dual_reflection_equation(Cplx u, Cplx v, Cplx eta, const BoundaryConfig& bc) {
    return reflection_residual(u, v, eta, k_plus_poly(bc), k_plus_poly(bc), true);
}

namespace {

// C * a(u) * b(u) * c(u) * E / divisor with all factors already on one layout.
PolyOp fuse_k(const GradedOperator& compress, const PolyOp& a, const PolyOp& b, const PolyOp& c,
              const GradedOperator& expand, const Poly& divisor, double* worst) {
    double rem = 0;
    PolyOp out = (PolyOp::constant(compress) * a * b * c * PolyOp::constant(expand))
                     .divide_exact(divisor, &rem)
                     .trimmed(1e-12);
    *worst = std::max(*worst, rem);
    return out;
}

}  // namespace

FusedKFamily build_fused_k(const FusedRFamily& f, const BoundaryConfig& bc) {
    FusedKFamily k;
    k.bc = bc;
    k.k_minus = k_minus_poly(bc);
    k.k_plus = k_plus_poly(bc);
    const Cplx eta = f.eta;
    const GradedSpace& V = f.proj.v;
    double* worst = &k.max_fusion_remainder;

    // 8-dimensional fusions on [V, V].
    {
        const TensorLayout L({V, V});
        const int pos0[] = {0}, pos1[] = {1}, pos01[] = {0, 1};
        const PolyOp r2u = embed(f.r.scaled_arg(2), L, pos01);
        const PolyOp rm2u = embed(f.r.scaled_arg(-2), L, pos01);
        const PolyOp km1_m = embed(k.k_minus.shifted(-0.5 * eta), L, pos0);
        const PolyOp km2_p = embed(k.k_minus.shifted(0.5 * eta), L, pos1);
        const PolyOp km1_p = embed(k.k_minus.shifted(0.5 * eta), L, pos0);
        const PolyOp km2_m = embed(k.k_minus.shifted(-0.5 * eta), L, pos1);
        const PolyOp kp1_m = embed(k.k_plus.shifted(-0.5 * eta), L, pos0);
        const PolyOp kp2_p = embed(k.k_plus.shifted(0.5 * eta), L, pos1);
        const PolyOp kp1_p = embed(k.k_plus.shifted(0.5 * eta), L, pos0);
        const PolyOp kp2_m = embed(k.k_plus.shifted(-0.5 * eta), L, pos1);

        k.kb_minus = fuse_k(f.proj.p8.compress(), km1_m, r2u, km2_p, f.proj.p8.expand(),
                            Poly::linear(0.5 * eta, 1), worst);
        k.kb_plus = fuse_k(f.proj.p8.compress(), kp2_p, rm2u, kp1_m, f.proj.p8.expand(),
                           Poly::linear(-0.5 * eta, 1), worst);
        k.kbp_minus = fuse_k(f.proj.p8bar.compress(), km1_p, r2u, km2_m, f.proj.p8bar.expand(),
                             Poly::linear(-0.5 * eta, 1), worst);
        k.kbp_plus = fuse_k(f.proj.p8bar.compress(), kp2_m, rm2u, kp1_p, f.proj.p8bar.expand(),
                            Poly::linear(0.5 * eta, 1), worst);
    }

    // 20-dimensional fusions on [Vbar, V] and [Vbarp, V].
    {
        const TensorLayout L({f.proj.vbar, V});
        const int pos0[] = {0}, pos1[] = {1}, pos01[] = {0, 1};
        const PolyOp kb_sh = embed(k.kb_minus.shifted(0.5 * eta), L, pos0);
        const PolyOp rb = embed(f.r_bar.composed(2, -0.5 * eta), L, pos01);
        const PolyOp km = embed(k.k_minus.shifted(-eta), L, pos1);
        k.kt_minus = fuse_k(f.proj.p20.compress(), kb_sh, rb, km, f.proj.p20.expand(),
                            Poly::linear(-eta, 1), worst);

        const PolyOp kp2 = embed(k.k_plus.shifted(-eta), L, pos1);
        const PolyOp rbm = embed(f.r_bar.composed(-2, 0.5 * eta), L, pos01);
        const PolyOp kbp_sh = embed(k.kb_plus.shifted(0.5 * eta), L, pos0);
        k.kt_plus = fuse_k(f.proj.p20.compress(), kp2, rbm, kbp_sh, f.proj.p20.expand(),
                           Poly::linear(eta, 2), worst);
    }
    {
        const TensorLayout L({f.proj.vbarp, V});
        const int pos0[] = {0}, pos1[] = {1}, pos01[] = {0, 1};
        const PolyOp kbp_sh = embed(k.kbp_minus.shifted(-0.5 * eta), L, pos0);
        const PolyOp rb = embed(f.r_bar_prime.composed(2, 0.5 * eta), L, pos01);
        const PolyOp km = embed(k.k_minus.shifted(eta), L, pos1);
        k.ktp_minus = fuse_k(f.proj.p20t.compress(), kbp_sh, rb, km, f.proj.p20t.expand(),
                             Poly::linear(eta, 1), worst);

        const PolyOp kp2 = embed(k.k_plus.shifted(eta), L, pos1);
        const PolyOp rbm = embed(f.r_bar_prime.composed(-2, -0.5 * eta), L, pos01);
        const PolyOp kbpp_sh = embed(k.kbp_plus.shifted(-0.5 * eta), L, pos0);
        k.ktp_plus = fuse_k(f.proj.p20t.compress(), kp2, rbm, kbpp_sh, f.proj.p20t.expand(),
                            Poly::linear(-eta, 2), worst);
    }
    return k;
}

double check_projector_absorption(const FusedRFamily& f, const BoundaryConfig& bc, Cplx u) {
    const GradedSpace& V = f.proj.v;
    const TensorLayout L({V, V});
    const int pos0[] = {0}, pos1[] = {1}, pos01[] = {0, 1};
    const Cplx eta = f.eta;
    // alpha = -eta makes R12(-alpha) proportional to the symmetric projector.
    const GradedOperator m = embed(k_minus(u, bc), L, pos1) *
                             embed(r_matrix(2.0 * u + eta, eta), L, pos01) *
                             embed(k_minus(u + eta, bc), L, pos0);
    const GradedOperator p8 = f.proj.p8.as_operator();
    return rel_residual(p8 * m * p8, m * p8);
}

double check_fused_reflection_equation(const FusedRFamily& f, const FusedKFamily& k, Cplx u,
                                       Cplx v) {
    const TensorLayout L({f.proj.vbar, f.proj.v});
    const int pos0[] = {0}, pos1[] = {1}, pos01[] = {0, 1};
    auto rb = [&](Cplx w) { return embed(f.r_bar.eval(w), L, pos01); };
    const GradedOperator k1 = embed(k.kb_minus.eval(u), L, pos0);
    const GradedOperator k2 = embed(k.k_minus.eval(v), L, pos1);
    const GradedOperator lhs = rb(u - v) * k1 * rb(u + v) * k2;
    const GradedOperator rhs = k2 * rb(u + v) * k1 * rb(u - v);
    return rel_residual(lhs, rhs);
}

double check_k_closure_minus(const FusedKFamily& k) {
    return rel_residual(k.kt_minus, k.ktp_minus);
}

double check_k_closure_plus(const FusedKFamily& k) { return rel_residual(k.kt_plus, k.ktp_plus); }

}  // namespace su22
