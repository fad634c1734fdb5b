#include <doctest.h>

#include "core/poly.hpp"
#include "core/poly_op.hpp"

#include <random>

using namespace su22;

TEST_CASE("scalar polynomial arithmetic and evaluation") {
    const Poly p = Poly::linear({1, 0}, {2, 0});              // 1 + 2u
    const Poly q = Poly(std::vector<Cplx>{Cplx{0, 1}, Cplx{3, 0}, Cplx{1, 0}});  // i + 3u + u^2
    const Cplx u{0.3, -0.7};
    CHECK(std::abs((p * q).eval(u) - p.eval(u) * q.eval(u)) < 1e-14);
    CHECK(std::abs((p + q).eval(u) - (p.eval(u) + q.eval(u))) < 1e-14);
    CHECK(std::abs(p.shifted({0.5, 0}).eval(u) - p.eval(u + 0.5)) < 1e-14);
    CHECK(std::abs(p.reflected().eval(u) - p.eval(-u)) < 1e-14);
    CHECK(std::abs(p.scaled_arg({2, 0}).eval(u) - p.eval(2.0 * u)) < 1e-14);
    CHECK(std::abs(q.derivative().eval(u) - (Cplx{3, 0} + 2.0 * u)) < 1e-14);
}

TEST_CASE("polynomial division and remainder") {
    const Cplx roots[] = {Cplx{1, 0}, Cplx{-2, 1}, Cplx{0.5, -0.5}};
    const Poly p = Poly::from_roots(roots);
    Poly q, r;
    p.divide(Poly::linear({-1, 0}, {1, 0}), q, r);  // divide by (u - 1)
    CHECK(r.norm() < 1e-14);
    CHECK(q.degree() == 2);
    // non-divisor leaves a remainder
    p.divide(Poly::linear({5, 0}, {1, 0}), q, r);
    CHECK(r.norm() > 0.1);
}

TEST_CASE("root finding recovers the construction roots") {
    const Cplx roots[] = {Cplx{0.3, 0.4}, Cplx{-1.2, 0}, Cplx{2.0, -0.7}, Cplx{0.1, 0.1}};
    const Poly p = Poly::from_roots(roots);
    std::vector<Cplx> found = p.roots();
    REQUIRE(found.size() == 4);
    for (const Cplx r : roots) {
        double best = 1e18;
        for (const Cplx f : found) best = std::min(best, std::abs(f - r));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("operator polynomial evaluation commutes with arithmetic") {
    const GradedSpace v = GradedSpace::fundamental();
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> d(-1, 1);
    auto rnd = [&] {
        Mat m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = Cplx(d(gen), d(gen));
        return GradedOperator{v, v, std::move(m)};
    };
    const PolyOp a = PolyOp::linear(rnd(), rnd());
    const PolyOp b{v, v, {rnd().mat, rnd().mat, rnd().mat}};
    for (int k = 0; k < 10; ++k) {
        const Cplx u{d(gen), d(gen)};
        CHECK(rel_residual((a * b).eval(u), a.eval(u) * b.eval(u)) < 1e-12);
        CHECK(rel_residual((a + b).eval(u), a.eval(u) + b.eval(u)) < 1e-12);
        CHECK(rel_residual(a.shifted({0.25, -0.5}).eval(u), a.eval(u + Cplx{0.25, -0.5})) <
              1e-12);
        CHECK(rel_residual(a.composed({2, 0}, {-0.3, 0.1}).eval(u),
                           a.eval(2.0 * u + Cplx{-0.3, 0.1})) < 1e-12);
    }
}

TEST_CASE("exact division flags broken identities") {
    const GradedSpace v = GradedSpace::fundamental();
    const GradedOperator id = GradedOperator::identity(v);
    const Poly divisor = Poly::linear({0.25, 0}, {1, 0});  // u + 1/4
    // (u + 1/4) id divides exactly
    PolyOp p = PolyOp::constant(id).mul_scalar(divisor);
    double rem = 1;
    const PolyOp q = p.divide_exact(divisor, &rem);
    CHECK(rem < 1e-15);
    CHECK(q.degree() == 0);
    CHECK(rel_residual(q.eval({0, 0}), id) < 1e-15);
    // a constant does not divide by (u + 1/4) without remainder
    PolyOp c = PolyOp::constant(id);
    c.divide_exact(divisor, &rem);
    CHECK(rem > 0.1);
}

TEST_CASE("degree trimming respects relative tolerance") {
    const GradedSpace v = GradedSpace::fundamental();
    const GradedOperator id = GradedOperator::identity(v);
    PolyOp p{v, v, {id.mat, id.mat, 1e-14 * id.mat}};
    CHECK(p.degree() == 2);
    CHECK(p.trimmed(1e-12).degree() == 1);
}
