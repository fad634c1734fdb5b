#include <doctest.h>

#include "su22/solver.hpp"
#include "su22/spectrum.hpp"

using namespace su22;

TEST_CASE("damped Newton solves a small holomorphic system") {
    // roots of z^2 = 2i coupled to w - z = 1
    auto f = [](const std::vector<Cplx>& x) {
        return std::vector<Cplx>{x[0] * x[0] - Cplx{0, 2}, x[1] - x[0] - Cplx{1, 0}};
    };
    std::vector<Cplx> x{{0.8, 0.3}, {1.5, 0.2}};
    SolverOptions opts;
    const double fn = damped_newton(f, x, opts);
    CHECK(fn < 1e-12);
    CHECK(std::abs(x[0] - Cplx{1, 1}) < 1e-9);
    CHECK(std::abs(x[1] - Cplx{2, 1}) < 1e-9);
}

TEST_CASE("real-restricted Gauss-Newton solves an overdetermined system") {
    auto f = [](const std::vector<double>& x) {
        return std::vector<Cplx>{Cplx{x[0] * x[0] - 2.0, 0}, Cplx{x[0] - std::sqrt(2.0), 0},
                                 Cplx{0, x[1] + 3.0}};
    };
    std::vector<double> x{1.0, 0.0};
    SolverOptions opts;
    const double fn = damped_newton_real(f, x, opts);
    CHECK(fn < 1e-10);
    CHECK(x[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(x[1] == doctest::Approx(-3.0));
}

TEST_CASE("periodic solver recovers both two-site eigenvalue polynomials") {
    const Cplx eta{0.5, 0};
    const ChainConfig cfg(2, eta, {{0.3, 0}, {-0.2, 0}});
    const PeriodicTQ tq(cfg);
    SolverOptions opts;
    opts.starts = 30;
    Rng rng(20240817ULL);

    // empty sector gives Lambda = Q0(u+eta) - Q0(u)
    auto empty = solve_bae_periodic(tq, 0, 0, 0, rng.fork(1), opts);
    REQUIRE(empty.size() == 1);
    auto fn0 = [&](Cplx u) { return tq.lambda(u, empty[0].state); };
    const PolynomialCertificate c0 = certify_polynomial(fn0, 1, {}, 1.0);
    REQUIRE(c0.ok);
    CHECK(std::abs(c0.poly.coeff(1) - 2.0 * eta) < 1e-10);
    CHECK(std::abs(c0.poly.coeff(0) -
                   (eta * eta - eta * (cfg.thetas[0] + cfg.thetas[1]))) < 1e-10);

    // one-root sector: root at (theta1 + theta2 - eta)/2
    auto one = solve_bae_periodic(tq, 1, 0, 0, rng.fork(2), opts);
    REQUIRE(one.size() >= 1);
    const Cplx expected = 0.5 * (cfg.thetas[0] + cfg.thetas[1] - eta);
    double best = 1e18;
    for (const auto& s : one) best = std::min(best, std::abs(s.state.r1[0] - expected));
    CHECK(best < 1e-9);
}

TEST_CASE("single-site periodic spectrum is fully degenerate and solvable") {
    const Cplx eta{0.5, 0};
    const FusedRFamily f = build_fused_family(eta);
    const ChainConfig cfg(1, eta, {{0.17, 0}});
    const TransferFamily fam = build_periodic_family(f, cfg);
    SpectrumResult spec = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {});
    REQUIRE(spec.records.size() == 4);
    for (const auto& r : spec.records) {
        CHECK(r.lambda().degree() <= 0);
        CHECK(std::abs(r.lambda().coeff(0) - eta) < 1e-12);
    }
    // the empty Bethe state reproduces it
    const PeriodicTQ tq(cfg);
    SolverOptions opts;
    opts.starts = 4;
    auto sols = solve_bae_periodic(tq, 0, 0, 0, Rng(5), opts);
    REQUIRE(sols.size() == 1);
    auto fn = [&](Cplx u) { return tq.lambda(u, sols[0].state); };
    REQUIRE(fn({0.4, 0.2}).has_value());
    CHECK(std::abs(*fn({0.4, 0.2}) - eta) < 1e-12);
}
