#pragma once

#include "su22/fusion.hpp"

#include <array>

namespace su22 {

// Boundary parameters (xi, c1..c4) for the left reflection matrix and
// (xi_tilde, ct1..ct4) for its dual. Integrability requires c1 c2 = c3 c4 on
// both sets; construction rejects violations instead of repairing them.
struct BoundaryConfig {
    Cplx xi, xi_tilde;
    std::array<Cplx, 4> c{}, ct{};

    static BoundaryConfig checked(Cplx xi, Cplx xi_tilde, std::array<Cplx, 4> c,
                                  std::array<Cplx, 4> ct, double tol = 1e-12);
    // No constraint validation; used for negative controls in tests.
    static BoundaryConfig unchecked(Cplx xi, Cplx xi_tilde, std::array<Cplx, 4> c,
                                    std::array<Cplx, 4> ct);

    bool hermitian_mode(double tol = 1e-12) const;  // c1 = conj(c2), c3 = conj(c4), both sets
    double constraint_violation() const;
};

// K^-(u) = xi + u M on V; M has diagonal (1,-1,-1,1) and off-diagonal c1..c4.
GradedOperator k_minus(Cplx u, const BoundaryConfig& bc);
// K^+(u) = K^-(-u) with (xi, c) -> (xi_tilde, ct).
GradedOperator k_plus(Cplx u, const BoundaryConfig& bc);
PolyOp k_minus_poly(const BoundaryConfig& bc);
PolyOp k_plus_poly(const BoundaryConfig& bc);
GradedOperator boundary_m_matrix(const std::array<Cplx, 4>& c);

// Graded reflection equation residual on V (x) V:
// R12(u-v) K1(u) R21(u+v) K2(v) = K2(v) R12(u+v) K1(u) R21(u-v).
double check_reflection_equation(Cplx u, Cplx v, Cplx eta, const BoundaryConfig& bc);
// Dual version with the sign pattern of the crossed arguments.
double check_dual_reflection_equation(Cplx u, Cplx v, Cplx eta, const BoundaryConfig& bc);

// Fused reflection matrices. Degrees: two for the 8-dimensional kinds, three
// for the 20-dimensional ones; every prefactor division is exact and the
// worst relative remainder is recorded.
struct FusedKFamily {
    BoundaryConfig bc;
    PolyOp k_minus, k_plus;            // on V, degree 1
    PolyOp kb_minus, kb_plus;          // on Vbar, degree <= 2
    PolyOp kbp_minus, kbp_plus;        // on Vbarp, degree <= 2
    PolyOp kt_minus, kt_plus;          // on Vtil, degree <= 3
    PolyOp ktp_minus, ktp_plus;        // on Vtilp, degree <= 3
    double max_fusion_remainder = 0;
};

FusedKFamily build_fused_k(const FusedRFamily& f, const BoundaryConfig& bc);

// Projector absorption: P (K2 R K1) P == (K2 R K1) P at one sample point.
double check_projector_absorption(const FusedRFamily& f, const BoundaryConfig& bc, Cplx u);

// Fused reflection equation residual for the 8-dimensional fused K:
// Rbar_12(u-v) Kbar_1(u) Rbar_21(u+v) K_2(v) = K_2(v) Rbar_12(u+v) Kbar_1(u) Rbar_21(u-v).
double check_fused_reflection_equation(const FusedRFamily& f, const FusedKFamily& k, Cplx u,
                                       Cplx v);

// Closure of boundary fusion: the two 20-dimensional fused K's agree under the
// index-wise basis identification (coefficient level).
double check_k_closure_minus(const FusedKFamily& k);
double check_k_closure_plus(const FusedKFamily& k);

}  // namespace su22
