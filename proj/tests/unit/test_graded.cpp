#include <doctest.h>

#include "core/graded.hpp"
#include "su22/rmatrix.hpp"

#include <random>

using namespace su22;

namespace {

GradedOperator random_op(const GradedSpace& s, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> d(-1, 1);
    Mat m(s.dim, s.dim);
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j) m(i, j) = Cplx(d(gen), d(gen));
    return {s, s, std::move(m)};
}

int parity(int i) { return i >= 2 ? 1 : 0; }  // fundamental space

}  // namespace

TEST_CASE("super tensor product follows the sign rule entrywise") {
    const GradedSpace v = GradedSpace::fundamental();
    // brute-force oracle over all 4^4 index tuples: for unit operators
    // A = |b><a|, B = |d><g| the only entry is (-1)^{[p(a)+p(b)] p(d)}.
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int g = 0; g < 4; ++g)
                for (int d = 0; d < 4; ++d) {
                    const GradedOperator ab =
                        super_tensor(GradedOperator::unit(v, b, a), GradedOperator::unit(v, d, g));
                    const double expected =
                        ((parity(a) + parity(b)) * parity(d)) % 2 ? -1.0 : 1.0;
                    CHECK(ab.mat(4 * b + d, 4 * a + g).real() == doctest::Approx(expected));
                }
}

TEST_CASE("super tensor spot examples") {
    const GradedSpace v = GradedSpace::fundamental();
    // |1><1| x |3><3| = +|13><13|
    GradedOperator x = super_tensor(GradedOperator::unit(v, 0, 0), GradedOperator::unit(v, 2, 2));
    CHECK(x.mat(2, 2) == Cplx{1, 0});
    // |3><4| x |4><4| carries (-1)^{(1+1)*1} = +1
    x = super_tensor(GradedOperator::unit(v, 2, 3), GradedOperator::unit(v, 3, 3));
    CHECK(x.mat(4 * 2 + 3, 4 * 3 + 3) == Cplx{1, 0});
    // |3><1| x |4><4| carries (-1)^{(0+1)*1} = -1
    x = super_tensor(GradedOperator::unit(v, 2, 0), GradedOperator::unit(v, 3, 3));
    CHECK(x.mat(4 * 2 + 3, 4 * 0 + 3) == Cplx{-1, 0});
}

TEST_CASE("graded permutation squares to the identity and flips fermion pairs") {
    const GradedSpace v = GradedSpace::fundamental();
    const GradedOperator p = graded_permutation(v);
    CHECK(rel_residual(p * p, GradedOperator::identity(p.domain)) < 1e-15);
    // P|12> = |21>
    Vec e12 = Vec::Zero(16);
    e12(4 * 0 + 1) = 1;
    Vec out = p.mat * e12;
    CHECK(std::abs(out(4 * 1 + 0) - Cplx{1, 0}) < 1e-15);
    // P|34> = -|43>
    Vec e34 = Vec::Zero(16);
    e34(4 * 2 + 3) = 1;
    out = p.mat * e34;
    CHECK(std::abs(out(4 * 3 + 2) + Cplx{1, 0}) < 1e-15);
}

TEST_CASE("supertrace of the fundamental identity vanishes") {
    const GradedSpace v = GradedSpace::fundamental();
    CHECK(std::abs(supertrace(GradedOperator::identity(v))) == 0.0);
    const TensorLayout pair({v, v});
    CHECK(std::abs(supertrace(GradedOperator::identity(pair.composite()))) == 0.0);
}

TEST_CASE("associativity of the super tensor product") {
    const GradedSpace v = GradedSpace::fundamental();
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 3; ++trial) {
        const GradedOperator a = random_op(v, gen), b = random_op(v, gen), c = random_op(v, gen);
        CHECK(rel_residual(super_tensor(a, super_tensor(b, c)),
                           super_tensor(super_tensor(a, b), c)) < 1e-13);
    }
}

TEST_CASE("mixed product law with the parity sign") {
    const GradedSpace v = GradedSpace::fundamental();
    // parity-homogeneous generators: all four odd
    const GradedOperator a = GradedOperator::unit(v, 0, 2);
    const GradedOperator b = GradedOperator::unit(v, 3, 0);
    const GradedOperator c = GradedOperator::unit(v, 2, 0);
    const GradedOperator d = GradedOperator::unit(v, 0, 3);
    const GradedOperator lhs = super_tensor(a, b) * super_tensor(c, d);
    const GradedOperator rhs = super_tensor(a * c, b * d) * Cplx{-1, 0};
    CHECK(rel_residual(lhs, rhs) < 1e-15);
    // even-odd pair: sign +1
    const GradedOperator e = GradedOperator::unit(v, 0, 1);  // even
    const GradedOperator lhs2 = super_tensor(a, b) * super_tensor(e, d);
    const GradedOperator rhs2 = super_tensor(a * e, b * d);
    CHECK(rel_residual(lhs2, rhs2) < 1e-15);
}

TEST_CASE("embedding base cases match iterated super tensor") {
    const GradedSpace v = GradedSpace::fundamental();
    const TensorLayout two({v, v});
    std::mt19937_64 gen(5);
    const GradedOperator a = random_op(v, gen);
    const int p0[] = {0}, p1[] = {1};
    CHECK(rel_residual(embed(a, two, p0), super_tensor(a, GradedOperator::identity(v))) <
          1e-15);
    CHECK(rel_residual(embed(a, two, p1), super_tensor(GradedOperator::identity(v), a)) <
          1e-15);
    const int both[] = {0, 1};
    const GradedOperator id16 = GradedOperator::identity(two.composite());
    CHECK(rel_residual(embed(id16, two, both), id16) < 1e-15);
}

TEST_CASE("embedded monodromy entries match the explicit sign formula at N=2") {
    // oracle: contracted entries with the displayed multi-site sign factor
    const GradedSpace v = GradedSpace::fundamental();
    const Cplx eta{0.5, 0};
    const Cplx u{0.73, 0.21};
    const Cplx th1{0.3, 0}, th2{-0.2, 0};
    const GradedOperator r1 = r_matrix(u - th1, eta);
    const GradedOperator r2 = r_matrix(u - th2, eta);
    const TensorLayout chain({v, v, v});  // aux, site1, site2
    const int pos1[] = {0, 1}, pos2[] = {0, 2};
    const GradedOperator t = embed(r1, chain, pos1) * embed(r2, chain, pos2);

    auto rentry = [&](const GradedOperator& r, int up_a, int up_q, int lo_a, int lo_q) {
        // upper indices are inputs (columns), lower outputs (rows)
        return r.mat(4 * lo_a + lo_q, 4 * up_a + up_q);
    };
    int checked = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int a1 = 0; a1 < 4; ++a1)
                for (int a2 = 0; a2 < 4; ++a2)
                    for (int b1 = 0; b1 < 4; ++b1)
                        for (int b2 = 0; b2 < 4; ++b2) {
                            Cplx oracle{0, 0};
                            for (int c2 = 0; c2 < 4; ++c2)
                                oracle += rentry(r2, a, a2, c2, b2) * rentry(r1, c2, a1, b, b1);
                            const int sign = (parity(a2) + parity(b2)) * parity(a1);
                            if (sign % 2) oracle = -oracle;
                            const Cplx direct = t.mat(16 * b + 4 * b1 + b2, 16 * a + 4 * a1 + a2);
                            REQUIRE(std::abs(oracle - direct) < 1e-13);
                            ++checked;
                        }
    CHECK(checked == 4096);
}

TEST_CASE("super partial trace factorises on tensor products") {
    const GradedSpace v = GradedSpace::fundamental();
    const TensorLayout pair({v, v});
    std::mt19937_64 gen(21);
    const GradedOperator b = random_op(v, gen), c = random_op(v, gen);
    const GradedOperator bc = super_tensor(b, c);
    CHECK(rel_residual(super_partial_trace(bc, pair, 1), b * supertrace(c)) < 1e-14);
    CHECK(rel_residual(super_partial_trace(bc, pair, 0), c * supertrace(b)) < 1e-14);
    // str over the second factor of the graded permutation is the identity
    CHECK(rel_residual(super_partial_trace(graded_permutation(v), pair, 1),
                       GradedOperator::identity(v)) < 1e-15);
}

TEST_CASE("supertrace is cyclic with the grading") {
    const GradedSpace v = GradedSpace::fundamental();
    const TensorLayout pair({v, v});
    std::mt19937_64 gen(31);
    // parity-even random operators: plain cyclicity
    auto even_op = [&](const GradedSpace& s) {
        GradedOperator a = random_op(s, gen);
        for (int i = 0; i < s.dim; ++i)
            for (int j = 0; j < s.dim; ++j)
                if ((s.parity[i] + s.parity[j]) % 2) a.mat(i, j) = 0;
        return a;
    };
    const GradedOperator a = even_op(pair.composite());
    const GradedOperator b = random_op(pair.composite(), gen);
    CHECK(std::abs(supertrace(a * b) - supertrace(b * a)) < 1e-13);
    // parity-odd homogeneous pair picks up the Koszul sign
    const GradedOperator x = GradedOperator::unit(v, 0, 2);
    const GradedOperator y = GradedOperator::unit(v, 2, 0);
    CHECK(std::abs(supertrace(x * y) + supertrace(y * x)) < 1e-15);
}

TEST_CASE("super transposition sign formula and invariants") {
    const GradedSpace v = GradedSpace::fundamental();
    const TensorLayout single({v});
    std::mt19937_64 gen(41);
    const GradedOperator a = random_op(v, gen);
    const GradedOperator at = super_transpose(a, single, 0);
    // entrywise oracle over all 16 entries
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double sgn = (parity(i) * (parity(i) + parity(j))) % 2 ? -1.0 : 1.0;
            CHECK(std::abs(at.mat(i, j) - sgn * a.mat(j, i)) < 1e-15);
        }
    // diagonal operators are fixed
    Mat d = Mat::Zero(4, 4);
    d.diagonal() << 1.0, 2.0, 3.0, 4.0;
    const GradedOperator diag{v, v, d};
    CHECK(rel_residual(super_transpose(diag, single, 0), diag) < 1e-15);
    // double transpose conjugates by the parity sign
    const GradedOperator att = super_transpose(at, single, 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double sgn = (parity(i) + parity(j)) % 2 ? -1.0 : 1.0;
            CHECK(std::abs(att.mat(i, j) - sgn * a.mat(i, j)) < 1e-15);
        }
    // str(A^st1 B^st1) = str(A B) on random 16x16 graded operators
    const TensorLayout pair({v, v});
    const GradedOperator x = random_op(pair.composite(), gen);
    const GradedOperator y = random_op(pair.composite(), gen);
    const Cplx lhs = supertrace(super_transpose(x, pair, 0) * super_transpose(y, pair, 0));
    CHECK(std::abs(lhs - supertrace(x * y)) < 1e-13);
}

TEST_CASE("embed rejects bad positions") {
    const GradedSpace v = GradedSpace::fundamental();
    const TensorLayout two({v, v});
    const GradedOperator a = GradedOperator::identity(v);
    const int bad[] = {2};
    CHECK_THROWS(embed(a, two, bad));
    const int notsorted[] = {1, 0};
    const TensorLayout three({v, v, v});
    const GradedOperator aa = GradedOperator::identity(two.composite());
    CHECK_THROWS(embed(aa, three, notsorted));
}
