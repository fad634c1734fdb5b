#include <doctest.h>

#include "su22/open_chain.hpp"
#include "su22/solver.hpp"
#include "su22/tq.hpp"

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
}  // namespace

TEST_CASE("Q-functions: empty lists, zeros and crossing symmetry") {
    const ChainConfig cfg(2, kEta, {{0.3, 0}, {-0.2, 0}});
    const PeriodicTQ ptq(cfg);
    BetheState empty;
    CHECK(ptq.q(1, {0.9, 0.3}, empty) == Cplx{1, 0});
    CHECK(std::abs(ptq.q(0, cfg.thetas[0], empty)) == 0.0);

    const OpenTQ otq(ChainConfig(1, kEta, {{0.37, 0}}), generic_bc());
    BetheState s;
    s.r1 = {{0.2, 0.4}, {-0.7, 0.1}};
    s.r2 = {{0.5, -0.3}};
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int i = 0; i < 5; ++i) {
        const Cplx u{d(gen), d(gen)};
        CHECK(std::abs(otq.q(1, u, s) - otq.q(1, -u - kEta, s)) < 1e-13);
        CHECK(std::abs(otq.q(2, u, s) - otq.q(2, -u - 2.0 * kEta, s)) < 1e-13);
    }
}

TEST_CASE("empty-state periodic eigenvalue reproduces the one-site transfer matrix") {
    const ChainConfig cfg(1, kEta, {{0.17, 0}});
    const PeriodicTQ tq(cfg);
    BetheState empty;
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int i = 0; i < 5; ++i) {
        const auto lam = tq.lambda({d(gen), d(gen)}, empty);
        REQUIRE(lam.has_value());
        CHECK(std::abs(*lam - kEta) < 1e-14);  // t_p = eta id at one site
    }
}

TEST_CASE("periodic residue conditions: solved root passes, perturbed root fails") {
    const ChainConfig cfg(2, kEta, {{0.3, 0}, {-0.2, 0}});
    const PeriodicTQ tq(cfg);
    // the one-root sector solves in closed form: 2 lambda = theta1 + theta2 - eta
    BetheState s;
    s.r1 = {0.5 * (cfg.thetas[0] + cfg.thetas[1] - kEta)};
    auto res = tq.bae_residuals(s);
    REQUIRE(res.size() == 1);
    CHECK(std::abs(res[0]) < 1e-14);
    BetheState bad = s;
    bad.r1[0] += 0.1;
    CHECK(std::abs(tq.bae_residuals(bad)[0]) > 1e-3);
}

TEST_CASE("printed second periodic family is degenerate, derived one is not") {
    const ChainConfig cfg(2, kEta, {{0.3, 0}, {-0.2, 0}});
    const PeriodicTQ tq(cfg);
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> d(-1, 1);
    BetheState s;
    s.r1 = {{d(gen), d(gen)}, {d(gen), d(gen)}};
    s.r2 = {{d(gen), d(gen)}};
    s.r3 = {{d(gen), d(gen)}, {d(gen), d(gen)}};
    // solve the residue-derived second condition for the level-2 root
    auto f = [&](const std::vector<Cplx>& x) {
        BetheState t = s;
        t.r2 = {x[0]};
        return std::vector<Cplx>{tq.bae_residuals(t)[2]};
    };
    std::vector<Cplx> x{{0.3, 0.2}};
    SolverOptions o;
    const double fn = damped_newton(f, x, o);
    REQUIRE(fn < 1e-10);
    BetheState t = s;
    t.r2 = {x[0]};
    // derived form satisfied, printed form violated
    CHECK(std::abs(tq.bae_residuals(t)[2]) < 1e-10);
    CHECK(std::abs(tq.printed_bae_residuals(t)[2]) > 1e-3);
    // printed right side is Q3(l)/Q3(l), identically one
    const Cplx la = t.r2[0];
    CHECK(std::abs(tq.q(3, la, t) / tq.q(3, la, t) - Cplx{1, 0}) < 1e-15);
}

TEST_CASE("open structure factors at the displayed special values") {
    const ChainConfig cfg(1, kEta, {{0.37, 0}});
    const OpenTQ tq(cfg, generic_bc());
    // alpha vanishes at zero, so every term of Lambda does
    CHECK(std::abs(tq.alpha(1, {0, 0})) == 0.0);
    CHECK(std::abs(tq.alpha(2, {0, 0})) == 0.0);
    BetheState s;
    s.sector_k = 0;
    s.r1 = {{0.21, 0.4}, {0.5, -0.7}, {1.2, 0.1}, {-0.4, 0.5}, {0.8, 0.2}};
    s.r3 = {{0.3, 0.6}, {-0.5, 0.2}, {1.1, -0.3}, {0.7, 0.7}, {0.2, -0.9}, {1.4, 0.4}};
    const auto lam0 = tq.lambda({0, 0}, s);
    REQUIRE(lam0.has_value());
    CHECK(std::abs(*lam0) < 1e-12);
    // g1 at c = ct = 0 equals -4
    const BoundaryConfig diag = BoundaryConfig::checked(
        {1.1, 0}, {0.9, 0}, {Cplx{0, 0}, Cplx{0, 0}, Cplx{0, 0}, Cplx{0, 0}},
        {Cplx{0, 0}, Cplx{0, 0}, Cplx{0, 0}, Cplx{0, 0}});
    const OpenTQ dtq(cfg, diag);
    // f(1)(u) / [u(u+eta)(u-eta)(u+eta/2)^2(u+3eta/2)(u-eta/2)(u+2eta)] = g1
    const Cplx u{0.9, 0.4};
    const Cplx denom = u * (u + kEta) * (u - kEta) * (u + 0.5 * kEta) * (u + 0.5 * kEta) *
                       (u + 1.5 * kEta) * (u - 0.5 * kEta) * (u + 2.0 * kEta);
    CHECK(std::abs(dtq.fpoly(1, u, +1, +1) / denom - Cplx{-4, 0}) < 1e-12);
    CHECK(std::abs(dtq.fpoly(2, u, +1, +1) / denom - Cplx{4, 0}) < 1e-12);
}

TEST_CASE("open eigenvalue evaluation returns a pole flag at Q zeros") {
    const ChainConfig cfg(1, kEta, {{0.37, 0}});
    const OpenTQ tq(cfg, generic_bc());
    BetheState s;
    s.sector_k = 0;
    s.r1 = {{0.21, 0.4}, {0.5, -0.7}, {1.2, 0.1}, {-0.4, 0.5}, {0.8, 0.2}};
    s.r3 = {{0.3, 0.6}, {-0.5, 0.2}, {1.1, -0.3}, {0.7, 0.7}, {0.2, -0.9}, {1.4, 0.4}};
    CHECK_FALSE(tq.lambda(s.r1[0], s).has_value());
    CHECK(tq.lambda({0.9, 0.9}, s).has_value());
}

TEST_CASE("open root-count invariants") {
    BetheState s;
    s.sector_k = 0;
    s.r1.resize(5);
    s.r3.resize(6);
    CHECK(open_root_counts_ok(s, 1));
    s.r3.resize(5);
    CHECK_FALSE(open_root_counts_ok(s, 1));
    s.r3.resize(6);
    s.sector_k = 1;
    CHECK_FALSE(open_root_counts_ok(s, 1));
}

TEST_CASE("polynomial interpolation utilities") {
    // a cubic is reconstructed exactly; a rational function is rejected
    const Poly p(std::vector<Cplx>{Cplx{1, 0}, Cplx{-2, 1}, Cplx{0, 0}, Cplx{0.5, -0.25}});
    auto fp = [&](Cplx u) -> std::optional<Cplx> { return p.eval(u); };
    bool ok = false;
    const Poly q = interpolate_on_circle(fp, 3, {0.1, 0.05}, 2.0, &ok);
    REQUIRE(ok);
    CHECK((q - p).norm() < 1e-12);
    CHECK(held_out_deviation(fp, q, {0.1, 0.05}, 1.2, 10) < 1e-12);
    auto fr = [&](Cplx u) -> std::optional<Cplx> { return p.eval(u) / (u - Cplx{0.4, 0.1}); };
    const PolynomialCertificate cert = certify_polynomial(fr, 3, {{0.4, 0.1}}, 1.0);
    CHECK_FALSE(cert.ok);
    const PolynomialCertificate good = certify_polynomial(fp, 3, {}, 1.0);
    CHECK(good.ok);
    CHECK(good.max_residue < 1e-12);
}
