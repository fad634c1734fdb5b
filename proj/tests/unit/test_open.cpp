#include <doctest.h>

#include "su22/open_chain.hpp"

#include <random>

using namespace su22;

namespace {
const Cplx kEta{0.6, 0};

BoundaryConfig generic_bc() {
    return BoundaryConfig::checked(
        {1.3, 0.0}, {0.8, 0.0},
        {Cplx{0.6, 0.0}, Cplx{0.5, 0.0}, Cplx{0.3, 0.0}, Cplx{1.0, 0.0}},
        {Cplx{0.4, 0.0}, Cplx{0.7, 0.0}, Cplx{0.35, 0.0}, Cplx{0.8, 0.0}});
}

ChainConfig one_site() { return ChainConfig(1, kEta, {{0.37, 0}}); }
}  // namespace

TEST_CASE("open transfer degrees at one and two sites") {
    const FusedRFamily f = build_fused_family(kEta);
    const FusedKFamily k = build_fused_k(f, generic_bc());
    for (int n : {1, 2}) {
        const ChainConfig cfg = n == 1 ? one_site() : ChainConfig(2, kEta, {{0.37, 0}, {-0.23, 0}});
        const OpenTransferFamily fam = build_open_family(f, k, cfg);
        CHECK(fam.t.degree() == 2 * n + 2);
        CHECK(fam.t1.degree() == 2 * n + 4);
        CHECK(fam.t2.degree() == 2 * n + 4);
    }
}

TEST_CASE("reflecting monodromy exchange relation") {
    const FusedRFamily f = build_fused_family(kEta);
    const ChainConfig cfg = one_site();
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> d(-1, 1);
    CHECK(check_reflecting_rtt(f, {d(gen), d(gen)}, {d(gen), d(gen)}, cfg) < 1e-13);
}

TEST_CASE("open product identities with the displayed prefactors, one site") {
    const FusedRFamily f = build_fused_family(kEta);
    const FusedKFamily k = build_fused_k(f, generic_bc());
    const auto res = check_open_identities(f, k, one_site());
    CHECK(res.size() == 6);
    for (double r : res) CHECK(r < 1e-9);
    const auto tres = check_open_tilde_identities(f, k, one_site());
    CHECK(tres.size() == 4);
    for (double r : tres) CHECK(r < 1e-9);
}

TEST_CASE("identities persist with diagonal boundaries") {
    const FusedRFamily f = build_fused_family(kEta);
    const BoundaryConfig diag = BoundaryConfig::checked(
        {1.1, 0}, {0.9, 0}, {Cplx{0, 0}, Cplx{0, 0}, Cplx{0, 0}, Cplx{0, 0}},
        {Cplx{0, 0}, Cplx{0, 0}, Cplx{0, 0}, Cplx{0, 0}});
    const FusedKFamily k = build_fused_k(f, diag);
    const auto res = check_open_identities(f, k, one_site());
    for (double r : res) CHECK(r < 1e-9);
}

TEST_CASE("special values of the open transfer family") {
    const FusedRFamily f = build_fused_family(kEta);
    const FusedKFamily k = build_fused_k(f, generic_bc());
    const OpenTransferFamily fam = build_open_family(f, k, one_site());
    const OpenSpecialValues sv = check_open_special_values(fam);
    CHECK(sv.t_zero < 1e-13);
    CHECK(sv.t1_zero < 1e-13);
    CHECK(sv.t2_zero < 1e-13);
    CHECK(sv.t1_plus < 1e-13);
    CHECK(sv.t1_minus < 1e-13);
    CHECK(sv.t2_plus < 1e-13);
    CHECK(sv.t2_minus < 1e-13);
    CHECK(sv.derivative_sum < 1e-13);
}

TEST_CASE("asymptotics pin the boundary charges and expose the misprint") {
    const FusedRFamily f = build_fused_family(kEta);
    const FusedKFamily k = build_fused_k(f, generic_bc());
    const OpenTransferFamily fam = build_open_family(f, k, one_site());
    const OpenAsymptotics a = check_open_asymptotics(fam);
    CHECK(a.t_leading < 1e-12);
    CHECK(a.t1_leading < 1e-12);
    CHECK(a.t2_leading_symmetric < 1e-12);
    CHECK(a.t2_leading_printed > 1e-2);  // verbatim parenthesisation reading fails
    CHECK(a.t_degree_excess < 1e-12);
    CHECK(a.t1_degree_excess < 1e-12);
    CHECK(a.u_hat < 1e-12);
    CHECK(a.q_hat < 1e-12);
    CHECK(a.u_hat_diagonality < 1e-13);
    CHECK(a.q_hat_diagonality < 1e-13);
}

TEST_CASE("boundary charge spectra match the closed-form level sets") {
    const BoundaryConfig bc = generic_bc();
    for (int n : {1, 2, 3}) {
        const GradedOperator uh = u_hat_operator(n, bc);
        const GradedOperator qh = q_hat_operator(n, bc);
        const std::vector<Cplx> ul = u_hat_levels(n, bc);
        const std::vector<Cplx> ql = q_hat_levels(n, bc);
        REQUIRE(ul.size() == size_t(n + 1));
        std::vector<long> ucount(n + 1, 0), qcount(n + 1, 0);
        for (int i = 0; i < uh.domain.dim; ++i) {
            double bu = 1e18, bq = 1e18;
            int au = 0, aq = 0;
            for (int l = 0; l <= n; ++l) {
                if (std::abs(uh.mat(i, i) - ul[l]) < bu) { bu = std::abs(uh.mat(i, i) - ul[l]); au = l; }
                if (std::abs(qh.mat(i, i) - ql[l]) < bq) { bq = std::abs(qh.mat(i, i) - ql[l]); aq = l; }
            }
            CHECK(bu < 1e-10);
            CHECK(bq < 1e-10);
            ++ucount[au];
            ++qcount[aq];
        }
        long total = 0;
        for (int l = 0; l <= n; ++l) {
            CHECK(ucount[l] == level_multiplicity(n, l));
            CHECK(qcount[l] == level_multiplicity(n, l));
            total += level_multiplicity(n, l);
        }
        CHECK(total == uh.domain.dim);
        // mutual commutation
        CHECK(rel_residual(uh * qh, qh * uh) < 1e-14);
    }
}

TEST_CASE("full polynomial decompositions of the open products, one site") {
    const FusedRFamily f = build_fused_family(kEta);
    const FusedKFamily k = build_fused_k(f, generic_bc());
    const OpenDecompositions d = check_open_decompositions(f, k, one_site());
    CHECK(d.product_rule < 1e-11);
    CHECK(d.tilde_rule_1 < 1e-11);
    CHECK(d.tilde_rule_2 < 1e-11);
    CHECK(d.complement_rem_1 < 1e-11);
    CHECK(d.complement_rem_2 < 1e-11);
    CHECK(d.tilde_equal < 1e-11);
}

TEST_CASE("open Hamiltonian is hermitian under conjugate boundary pairs") {
    const FusedRFamily f = build_fused_family(kEta);
    const double r24 = std::sqrt(0.24);
    const BoundaryConfig hbc = BoundaryConfig::checked(
        {1.1, 0}, {0.9, 0},
        {Cplx{0.3, 0.4}, Cplx{0.3, -0.4}, Cplx{0.5, 0}, Cplx{0.5, 0}},
        {Cplx{0.6, 0.2}, Cplx{0.6, -0.2}, Cplx{0.4, r24}, Cplx{0.4, -r24}});
    REQUIRE(hbc.hermitian_mode());
    const FusedKFamily k = build_fused_k(f, hbc);
    const GradedOperator h = hamiltonian_open(f, k, 2);
    CHECK((h.mat - Mat(h.mat.adjoint())).norm() / h.mat.norm() < 1e-12);
    // commutes with the transfer matrix and matches the finite difference of
    // log(t(u)/u)
    const ChainConfig hom = ChainConfig::homogeneous(2, kEta);
    const PolyOp t = open_transfer(f, k, MonodromyKind::fundamental, hom);
    const GradedOperator tu = t.eval({0.53, 0.11});
    CHECK(rel_residual(h * tu, tu * h) < 1e-11);
    const double fd = 1e-5;
    auto s_at = [&](double x) { return Mat(t.eval({x, 0}).mat / x); };
    const Mat num = (s_at(fd) - s_at(-fd)) / (2 * fd);
    const Mat s0 = 0.5 * (s_at(fd) + s_at(-fd));
    const Mat hfd = 0.5 * s0.transpose().partialPivLu().solve(num.transpose()).transpose();
    CHECK((h.mat - hfd).norm() / h.mat.norm() < 1e-6);
}

TEST_CASE("non-hermitian boundaries yield a non-hermitian Hamiltonian") {
    const FusedRFamily f = build_fused_family(kEta);
    const FusedKFamily k = build_fused_k(f, generic_bc());
    const GradedOperator h = hamiltonian_open(f, k, 1);
    CHECK((h.mat - Mat(h.mat.adjoint())).norm() / h.mat.norm() > 1e-3);
}
