#pragma once

#include "core/poly_op.hpp"

namespace su22 {

// The 16x16 R-matrix on V (x) V, R(u) = u*id + eta*P with P the graded
// permutation. Basis order on the pair is (i1,i2) -> 4*i1 + i2.
struct RMatrixParams {
    Cplx eta;
};

GradedOperator r_matrix(Cplx u, Cplx eta);
PolyOp r_matrix_poly(Cplx eta);

Cplx rho1(Cplx u, Cplx eta);  // -(u-eta)(u+eta)
Cplx rho2(Cplx u);            // -u^2

// Residual of R_12(u) R_21(-u) = rho1(u) id.
double check_unitarity(Cplx u, Cplx eta);

// Residual of R_12^{st1}(-u) R_21^{st1}(u) = rho2(u) id.
double check_crossing_unitarity(Cplx u, Cplx eta);

// Residual of R_12(u-v) R_13(u) R_23(v) = R_23(v) R_13(u) R_12(u-v) on V^3.
double check_gybe(Cplx u, Cplx v, Cplx eta);

}  // namespace su22
