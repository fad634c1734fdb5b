#include "su22/projectors.hpp"

#include <cmath>

namespace su22 {

GradedOperator Projector::as_operator() const {
    return {source, source, vectors * vectors.adjoint()};
}

GradedOperator Projector::compress() const { return {source, image, vectors.adjoint()}; }

GradedOperator Projector::expand() const { return {image, source, vectors}; }

GradedOperator Projector::complement() const {
    return {source, source, Mat::Identity(source.dim, source.dim) - vectors * vectors.adjoint()};
}

double Projector::orthonormality_residual() const {
    const Mat gram = vectors.adjoint() * vectors;
    return (gram - Mat::Identity(image.dim, image.dim)).norm();
}

namespace {

// One term c * |a b> of a pair vector; a indexes the first factor, b the
// second, both 0-based.
struct Term {
    double c;
    int a, b;
};

Vec pair_vector(int dim2, int dim1dim2, std::initializer_list<Term> terms) {
    Vec v = Vec::Zero(dim1dim2);
    for (const Term& t : terms) v(static_cast<long>(t.a) * dim2 + t.b) += t.c;
    return v;
}

const double S2 = 1.0 / std::sqrt(2.0);
const double S3 = 1.0 / std::sqrt(3.0);
const double S6 = 1.0 / std::sqrt(6.0);
const double R2 = std::sqrt(2.0);

Mat sym_basis() {
    // f1..f8 on V(x)V
    Mat m(16, 8);
    int k = 0;
    auto put = [&](std::initializer_list<Term> t) { m.col(k++) = pair_vector(4, 16, t); };
    put({{1, 0, 0}});
    put({{S2, 0, 1}, {S2, 1, 0}});
    put({{1, 1, 1}});
    put({{S2, 2, 3}, {-S2, 3, 2}});
    put({{S2, 0, 2}, {S2, 2, 0}});
    put({{S2, 0, 3}, {S2, 3, 0}});
    put({{S2, 1, 2}, {S2, 2, 1}});
    put({{S2, 1, 3}, {S2, 3, 1}});
    return m;
}

Mat antisym_basis() {
    // g1..g8 on V(x)V
    Mat m(16, 8);
    int k = 0;
    auto put = [&](std::initializer_list<Term> t) { m.col(k++) = pair_vector(4, 16, t); };
    put({{S2, 0, 1}, {-S2, 1, 0}});
    put({{1, 2, 2}});
    put({{S2, 2, 3}, {S2, 3, 2}});
    put({{1, 3, 3}});
    put({{S2, 0, 2}, {-S2, 2, 0}});
    put({{S2, 0, 3}, {-S2, 3, 0}});
    put({{S2, 1, 2}, {-S2, 2, 1}});
    put({{S2, 1, 3}, {-S2, 3, 1}});
    return m;
}

Mat phi_basis() {
    // phi_1..phi_20 on Vbar(x)V; first index runs over f1..f8.
    Mat m(32, 20);
    int k = 0;
    auto put = [&](std::initializer_list<Term> t) { m.col(k++) = pair_vector(4, 32, t); };
    put({{R2 * S3, 0, 1}, {-S3, 1, 0}});
    put({{S3, 1, 1}, {-R2 * S3, 2, 0}});
    put({{2 * S6, 5, 2}, {S6, 4, 3}, {S6, 3, 0}});
    put({{S2, 4, 3}, {-S2, 3, 0}});
    put({{S6, 7, 2}, {2 * S6, 3, 1}, {-S6, 6, 3}});
    put({{S2, 6, 3}, {S2, 7, 2}});
    put({{1, 4, 2}});
    put({{1, 6, 2}});
    put({{1, 5, 3}});
    put({{1, 7, 3}});
    put({{R2 * S3, 0, 2}, {-S3, 4, 0}});
    put({{R2 * S3, 0, 3}, {-S3, 5, 0}});
    put({{S6, 6, 0}, {S6, 1, 2}, {-2 * S6, 4, 1}});
    put({{S2, 1, 2}, {-S2, 6, 0}});
    put({{S6, 7, 0}, {S6, 1, 3}, {-2 * S6, 5, 1}});
    put({{S2, 1, 3}, {-S2, 7, 0}});
    put({{R2 * S3, 2, 2}, {-S3, 6, 1}});
    put({{R2 * S3, 2, 3}, {-S3, 7, 1}});
    put({{1, 3, 2}});
    put({{1, 3, 3}});
    return m;
}

Mat phi_tilde_basis() {
    // phitilde_1..phitilde_20 on Vbarp(x)V; first index runs over g1..g8.
    // The 16th vector is taken in its orthonormality-consistent form
    // (2 g6 (x) 2 + g8 (x) 1 + g1 (x) 4)/sqrt 6; the verbatim coefficient
    // placement fails orthogonality against the 15th vector.
    Mat m(32, 20);
    int k = 0;
    auto put = [&](std::initializer_list<Term> t) { m.col(k++) = pair_vector(4, 32, t); };
    put({{1, 0, 0}});
    put({{1, 0, 1}});
    put({{S2, 2, 0}, {-S2, 4, 3}});
    put({{S6, 4, 3}, {S6, 2, 0}, {-2 * S6, 5, 2}});
    put({{S2, 7, 2}, {-S2, 6, 3}});
    put({{2 * S6, 2, 1}, {-S6, 6, 3}, {-S6, 7, 2}});
    put({{R2 * S3, 1, 0}, {-S3, 4, 2}});
    put({{R2 * S3, 1, 1}, {-S3, 6, 2}});
    put({{R2 * S3, 3, 0}, {-S3, 5, 3}});
    put({{R2 * S3, 3, 1}, {-S3, 7, 3}});
    put({{1, 4, 0}});
    put({{1, 5, 0}});
    put({{S2, 6, 0}, {-S2, 0, 2}});
    put({{S6, 6, 0}, {2 * S6, 4, 1}, {S6, 0, 2}});
    put({{S2, 7, 0}, {-S2, 0, 3}});
    put({{2 * S6, 5, 1}, {S6, 7, 0}, {S6, 0, 3}});
    put({{1, 6, 1}});
    put({{1, 7, 1}});
    put({{S3, 2, 2}, {-R2 * S3, 1, 3}});
    put({{R2 * S3, 3, 2}, {-S3, 2, 3}});
    return m;
}

GradedSpace eight_dim() { return GradedSpace(8, {0, 0, 0, 0, 1, 1, 1, 1}); }

GradedSpace twenty_dim() {
    std::vector<int> p(20, 0);
    for (int i = 10; i < 20; ++i) p[i] = 1;
    return GradedSpace(20, std::move(p));
}

}  // namespace

ProjectorSet build_projectors() {
    ProjectorSet ps;
    ps.v = GradedSpace::fundamental();
    ps.vbar = eight_dim();
    ps.vbarp = eight_dim();
    ps.vtil = twenty_dim();
    ps.vtilp = twenty_dim();

    const GradedSpace vv = tensor(ps.v, ps.v);
    ps.p8 = Projector{vv, ps.vbar, sym_basis()};
    ps.p8bar = Projector{vv, ps.vbarp, antisym_basis()};
    ps.p20 = Projector{tensor(ps.vbar, ps.v), ps.vtil, phi_basis()};
    ps.p20t = Projector{tensor(ps.vbarp, ps.v), ps.vtilp, phi_tilde_basis()};
    return ps;
}

}  // namespace su22
