#include "su22/rmatrix.hpp"

namespace su22 {

GradedOperator r_matrix(Cplx u, Cplx eta) {
    return r_matrix_poly(eta).eval(u);
}

PolyOp r_matrix_poly(Cplx eta) {
    const GradedSpace v = GradedSpace::fundamental();
    const GradedOperator p = graded_permutation(v);
    const GradedOperator id = GradedOperator::identity(p.domain);
    return PolyOp::linear(p * eta, id);
}

Cplx rho1(Cplx u, Cplx eta) { return -(u - eta) * (u + eta); }

Cplx rho2(Cplx u) { return -u * u; }

double check_unitarity(Cplx u, Cplx eta) {
    const GradedSpace v = GradedSpace::fundamental();
    const GradedOperator r12 = r_matrix(u, eta);
    const GradedOperator r21 = exchange_factors(r_matrix(-u, eta), v, v);
    const GradedOperator lhs = r12 * r21;
    const GradedOperator rhs = GradedOperator::identity(lhs.domain) * rho1(u, eta);
    return rel_residual(lhs, rhs);
}

double check_crossing_unitarity(Cplx u, Cplx eta) {
    const GradedSpace v = GradedSpace::fundamental();
    const TensorLayout pair({v, v});
    const GradedOperator a = super_transpose(r_matrix(-u, eta), pair, 0);
    const GradedOperator b =
        super_transpose(exchange_factors(r_matrix(u, eta), v, v), pair, 0);
    const GradedOperator lhs = a * b;
    const GradedOperator rhs = GradedOperator::identity(lhs.domain) * rho2(u);
    return rel_residual(lhs, rhs);
}

double check_gybe(Cplx u, Cplx v, Cplx eta) {
    const GradedSpace V = GradedSpace::fundamental();
    const TensorLayout triple({V, V, V});
    const int p12[] = {0, 1}, p13[] = {0, 2}, p23[] = {1, 2};
    const GradedOperator r12 = embed(r_matrix(u - v, eta), triple, p12);
    const GradedOperator r13 = embed(r_matrix(u, eta), triple, p13);
    const GradedOperator r23 = embed(r_matrix(v, eta), triple, p23);
    return rel_residual(r12 * r13 * r23, r23 * r13 * r12);
}

}  // namespace su22
