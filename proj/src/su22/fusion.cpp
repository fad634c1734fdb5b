#include "su22/fusion.hpp"

#include <stdexcept>

namespace su22 {

namespace {

// Sandwich compress: (C (x) id) * left(u) * right(u) * (E (x) id) / divisor
// on a three-factor layout, where C/E compress the first two factors.
PolyOp fuse_pair_first(const Projector& p, const GradedSpace& third, const PolyOp& left,
                       const PolyOp& right, const Poly& divisor, double* remainder) {
    const GradedOperator c = super_tensor(p.compress(), GradedOperator::identity(third));
    const GradedOperator e = super_tensor(p.expand(), GradedOperator::identity(third));
    const PolyOp sandwich = PolyOp::constant(c) * (left * right) * PolyOp::constant(e);
    return sandwich.divide_exact(divisor, remainder).trimmed(1e-13);
}

}  // namespace

Cplx rho3(Cplx u, Cplx eta) { return -(u + 1.5 * eta) * (u - 1.5 * eta); }
Cplx rho4(Cplx u, Cplx eta) { return -(u + 0.5 * eta) * (u - 0.5 * eta); }
Cplx rho5(Cplx u, Cplx eta) { return -(u - 1.5 * eta) * (u + 1.5 * eta); }
Cplx rho6(Cplx u, Cplx eta) { return -(u - 0.5 * eta) * (u + 0.5 * eta); }

FusedRFamily build_fused_family(Cplx eta) {
    if (eta == Cplx{0, 0}) throw std::invalid_argument("build_fused_family: eta must be nonzero");
    FusedRFamily f;
    f.eta = eta;
    f.proj = build_projectors();
    f.r = r_matrix_poly(eta);
    const GradedSpace& V = f.proj.v;
    double rem = 0;

    // 8-dimensional fusions on [V, V, V].
    {
        const TensorLayout L({V, V, V});
        const int p13[] = {0, 2}, p23[] = {1, 2};
        const PolyOp r13p = embed(f.r.shifted(0.5 * eta), L, p13);
        const PolyOp r23m = embed(f.r.shifted(-0.5 * eta), L, p23);
        f.r_bar = fuse_pair_first(f.proj.p8, V, r23m, r13p, Poly::linear(0.5 * eta, 1), &rem);
        f.max_fusion_remainder = std::max(f.max_fusion_remainder, rem);

        const PolyOp r13m = embed(f.r.shifted(-0.5 * eta), L, p13);
        const PolyOp r23p = embed(f.r.shifted(0.5 * eta), L, p23);
        f.r_bar_prime = fuse_pair_first(f.proj.p8bar, V, r23p, r13m, Poly::linear(-0.5 * eta, 1), &rem);
        f.max_fusion_remainder = std::max(f.max_fusion_remainder, rem);
    }

    // 20-dimensional fusions.
    {
        const TensorLayout L({f.proj.vbar, V, V});
        const int p13[] = {0, 2}, p23[] = {1, 2};
        const PolyOp rb13 = embed(f.r_bar.shifted(0.5 * eta), L, p13);
        const PolyOp r23 = embed(f.r.shifted(-eta), L, p23);
        f.r_tilde = fuse_pair_first(f.proj.p20, V, rb13, r23, Poly::linear(-eta, 1), &rem);
        f.max_fusion_remainder = std::max(f.max_fusion_remainder, rem);
    }
    {
        const TensorLayout L({f.proj.vbarp, V, V});
        const int p13[] = {0, 2}, p23[] = {1, 2};
        const PolyOp rb13 = embed(f.r_bar_prime.shifted(-0.5 * eta), L, p13);
        const PolyOp r23 = embed(f.r.shifted(eta), L, p23);
        f.r_tilde_prime = fuse_pair_first(f.proj.p20t, V, rb13, r23, Poly::linear(eta, 1), &rem);
        f.max_fusion_remainder = std::max(f.max_fusion_remainder, rem);
    }

    // Quantum-space fusion of r_bar_prime by the symmetric pair projector.
    {
        const TensorLayout L({f.proj.vbarp, V, V});
        const int p12[] = {0, 1}, p13[] = {0, 2}, p23[] = {1, 2};
        (void)p23;
        const PolyOp a = embed(f.r_bar_prime.shifted(-0.5 * eta), L, p13);
        const PolyOp b = embed(f.r_bar_prime.shifted(0.5 * eta), L, p12);
        const GradedOperator c =
            super_tensor(GradedOperator::identity(f.proj.vbarp), f.proj.p8.compress());
        const GradedOperator e =
            super_tensor(GradedOperator::identity(f.proj.vbarp), f.proj.p8.expand());
        const PolyOp sandwich = PolyOp::constant(c) * a * b * PolyOp::constant(e);
        f.r_barprime_bar =
            sandwich.divide_exact(Poly::linear(eta, 1), &rem).trimmed(1e-13);
        f.max_fusion_remainder = std::max(f.max_fusion_remainder, rem);
    }
    return f;
}

double check_p8_degeneracy(const FusedRFamily& f) {
    return rel_residual(f.r.eval(f.eta), f.proj.p8.as_operator() * (2.0 * f.eta));
}

double check_p8bar_degeneracy(const FusedRFamily& f) {
    return rel_residual(f.r.eval(-f.eta), f.proj.p8bar.as_operator() * (-2.0 * f.eta));
}

double check_p20_degeneracy(const FusedRFamily& f) {
    return rel_residual(f.r_bar.eval(-1.5 * f.eta), f.proj.p20.as_operator() * (-3.0 * f.eta));
}

double check_p20t_degeneracy(const FusedRFamily& f) {
    return rel_residual(f.r_bar_prime.eval(1.5 * f.eta), f.proj.p20t.as_operator() * (3.0 * f.eta));
}

namespace {

const PolyOp& pick(const FusedRFamily& f, FusedKind kind) {
    switch (kind) {
        case FusedKind::bar: return f.r_bar;
        case FusedKind::bar_prime: return f.r_bar_prime;
        case FusedKind::tilde: return f.r_tilde;
        case FusedKind::tilde_prime: return f.r_tilde_prime;
        case FusedKind::barprime_bar: return f.r_barprime_bar;
    }
    throw std::logic_error("pick: bad kind");
}

}  // namespace

double check_fused_ybe(const FusedRFamily& f, FusedKind kind, Cplx u, Cplx v) {
    const GradedSpace& V = f.proj.v;
    const int p12[] = {0, 1}, p13[] = {0, 2}, p23[] = {1, 2};
    if (kind == FusedKind::barprime_bar) {
        const TensorLayout L({f.proj.vbarp, f.proj.vbar, V});
        const GradedOperator a = embed(f.r_barprime_bar.eval(u - v), L, p12);
        const GradedOperator b = embed(f.r_bar_prime.eval(u), L, p13);
        const GradedOperator c = embed(f.r_bar.eval(v), L, p23);
        return rel_residual(a * b * c, c * b * a);
    }
    const PolyOp& rx = pick(f, kind);
    const TensorLayout L({rx.domain() == tensor(f.proj.vbar, V) ? f.proj.vbar
                          : rx.domain() == tensor(f.proj.vbarp, V) ? f.proj.vbarp
                          : rx.domain() == tensor(f.proj.vtil, V) ? f.proj.vtil
                                                                  : f.proj.vtilp,
                          V, V});
    const GradedOperator a = embed(rx.eval(u - v), L, p12);
    const GradedOperator b = embed(rx.eval(u), L, p13);
    const GradedOperator c = embed(f.r.eval(v), L, p23);
    return rel_residual(a * b * c, c * b * a);
}

double check_fused_unitarity(const FusedRFamily& f, FusedKind kind, Cplx u) {
    const PolyOp& rx = pick(f, kind);
    const GradedOperator lhs = rx.eval(u) * rx.eval(-u);
    const Cplx rho = (kind == FusedKind::bar) ? rho3(u, f.eta) : rho5(u, f.eta);
    return rel_residual(lhs, GradedOperator::identity(lhs.domain) * rho);
}

double check_fused_crossing(const FusedRFamily& f, FusedKind kind, Cplx u) {
    const PolyOp& rx = pick(f, kind);
    const GradedSpace aux = (kind == FusedKind::bar) ? f.proj.vbar : f.proj.vbarp;
    const TensorLayout L({aux, f.proj.v});
    const GradedOperator a = super_transpose(rx.eval(u), L, 0);
    const GradedOperator b = super_transpose(rx.eval(-u), L, 0);
    const Cplx rho = (kind == FusedKind::bar) ? rho4(u, f.eta) : rho6(u, f.eta);
    return rel_residual(a * b, GradedOperator::identity(L.composite()) * rho);
}

double check_closure(const FusedRFamily& f) { return rel_residual(f.r_tilde, f.r_tilde_prime); }

}  // namespace su22
