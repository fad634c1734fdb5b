#include <doctest.h>

#include "su22/fusion.hpp"

#include <random>

using namespace su22;

TEST_CASE("projector bases are orthonormal with the stated parities") {
    const ProjectorSet ps = build_projectors();
    CHECK(ps.p8.orthonormality_residual() < 1e-14);
    CHECK(ps.p8bar.orthonormality_residual() < 1e-14);
    CHECK(ps.p20.orthonormality_residual() < 1e-14);
    CHECK(ps.p20t.orthonormality_residual() < 1e-14);
    CHECK(ps.vbar.n_even() == 4);
    CHECK(ps.vbar.n_odd() == 4);
    CHECK(ps.vtil.n_even() == 10);
    CHECK(ps.vtil.n_odd() == 10);
    // |f2> = (|12>+|21>)/sqrt2, even
    const double s2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(ps.p8.vectors(4 * 0 + 1, 1) - s2) < 1e-15);
    CHECK(std::abs(ps.p8.vectors(4 * 1 + 0, 1) - s2) < 1e-15);
    CHECK(ps.vbar.parity[1] == 0);
    // |g2> = |33>, even
    CHECK(std::abs(ps.p8bar.vectors(4 * 2 + 2, 1) - 1.0) < 1e-15);
    CHECK(ps.vbarp.parity[1] == 0);
    // idempotent and self-adjoint
    for (const Projector* p : {&ps.p8, &ps.p8bar, &ps.p20, &ps.p20t}) {
        const GradedOperator op = p->as_operator();
        CHECK(rel_residual(op * op, op) < 1e-13);
        CHECK((op.mat - Mat(op.mat.adjoint())).norm() < 1e-13);
    }
}

TEST_CASE("pair projectors are complete and orthogonal") {
    const ProjectorSet ps = build_projectors();
    const GradedOperator sum = ps.p8.as_operator() + ps.p8bar.as_operator();
    CHECK(rel_residual(sum, GradedOperator::identity(sum.domain)) < 1e-14);
    CHECK((ps.p8.as_operator() * ps.p8bar.as_operator()).mat.norm() < 1e-14);
    // 20-dim projector against its complement
    const GradedOperator q = ps.p20.complement();
    CHECK((ps.p20.as_operator() * q).mat.norm() < 1e-13);
    CHECK(std::abs(ps.p20.as_operator().mat.trace() - Cplx{20, 0}) < 1e-12);
}

TEST_CASE("degenerate points produce the projectors") {
    const FusedRFamily f = build_fused_family({0.5, 0});
    CHECK(check_p8_degeneracy(f) < 1e-13);
    CHECK(check_p8bar_degeneracy(f) < 1e-13);
    CHECK(check_p20_degeneracy(f) < 1e-12);
    CHECK(check_p20t_degeneracy(f) < 1e-12);
}

TEST_CASE("fusion prefactor divisions are exact and degree one") {
    const FusedRFamily f = build_fused_family({0.6, 0});
    CHECK(f.max_fusion_remainder < 1e-12);
    CHECK(f.r_bar.degree() == 1);
    CHECK(f.r_bar_prime.degree() == 1);
    CHECK(f.r_tilde.degree() == 1);
    CHECK(f.r_tilde_prime.degree() == 1);
    CHECK(f.r_barprime_bar.degree() == 1);
}

TEST_CASE("fused Yang-Baxter equations at random points") {
    const FusedRFamily f = build_fused_family({0.6, 0});
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> d(-1.2, 1.2);
    for (int i = 0; i < 5; ++i) {
        const Cplx u{d(gen), d(gen)}, v{d(gen), d(gen)};
        CHECK(check_fused_ybe(f, FusedKind::bar, u, v) < 1e-12);
        CHECK(check_fused_ybe(f, FusedKind::bar_prime, u, v) < 1e-12);
        CHECK(check_fused_ybe(f, FusedKind::tilde, u, v) < 1e-12);
        CHECK(check_fused_ybe(f, FusedKind::tilde_prime, u, v) < 1e-12);
        CHECK(check_fused_ybe(f, FusedKind::barprime_bar, u, v) < 1e-12);
    }
    // degenerate sample where the pair argument hits the projector point
    const Cplx v0{0.2, 0.1};
    CHECK(check_fused_ybe(f, FusedKind::bar, v0, v0) < 1e-13);
}

TEST_CASE("fused unitarity and crossing scalars") {
    const Cplx eta{0.5, 0};
    const FusedRFamily f = build_fused_family(eta);
    // rho3(1) = -(1 + 0.75)(1 - 0.75) = -0.4375
    const GradedOperator prod = f.r_bar.eval({1, 0}) * f.r_bar.eval({-1, 0});
    CHECK(std::abs(prod.mat(0, 0) - Cplx{-0.4375, 0}) < 1e-13);
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> d(-1.2, 1.2);
    for (int i = 0; i < 4; ++i) {
        const Cplx u{d(gen), d(gen)};
        CHECK(check_fused_unitarity(f, FusedKind::bar, u) < 1e-13);
        CHECK(check_fused_unitarity(f, FusedKind::bar_prime, u) < 1e-13);
        CHECK(check_fused_crossing(f, FusedKind::bar, u) < 1e-13);
        CHECK(check_fused_crossing(f, FusedKind::bar_prime, u) < 1e-13);
    }
}

TEST_CASE("the recursive fusion closes: both twenty-dimensional routes agree") {
    const FusedRFamily f = build_fused_family({0.6, 0});
    CHECK(check_closure(f) < 1e-12);
    // pointwise too
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (int i = 0; i < 5; ++i) {
        const Cplx u{d(gen), d(gen)};
        CHECK(rel_residual(f.r_tilde.eval(u), f.r_tilde_prime.eval(u)) < 1e-12);
    }
}

TEST_CASE("pair-exchanged fusion reproduces the same fused R-matrix") {
    // the mirrored construction (fusing with the swapped pair order) gives the
    // same compressed matrix for this model
    const Cplx eta{0.5, 0};
    const FusedRFamily f = build_fused_family(eta);
    const GradedSpace& V = f.proj.v;
    const TensorLayout L({V, V, V});
    const int p13[] = {0, 2}, p23[] = {1, 2};
    const PolyOp r32 = embed(f.r.shifted(-0.5 * eta), L, p23);
    const PolyOp r31 = embed(f.r.shifted(0.5 * eta), L, p13);
    const GradedOperator c = super_tensor(f.proj.p8.compress(), GradedOperator::identity(V));
    const GradedOperator e = super_tensor(f.proj.p8.expand(), GradedOperator::identity(V));
    double rem = 1;
    const PolyOp alt = (PolyOp::constant(c) * (r32 * r31) * PolyOp::constant(e))
                           .divide_exact(Poly::linear(0.5 * eta, 1), &rem)
                           .trimmed(1e-13);
    CHECK(rem < 1e-13);
    CHECK(rel_residual(alt, f.r_bar) < 1e-13);
}
