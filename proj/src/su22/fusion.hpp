#pragma once

#include "core/poly_op.hpp"
#include "su22/projectors.hpp"
#include "su22/rmatrix.hpp"

namespace su22 {

// All fused R-matrices for one value of eta. Auxiliary spaces: bar kinds are
// 8-dimensional, tilde kinds 20-dimensional; the entries of every aux-fused
// kind are degree-one polynomials after the exact prefactor division.
struct FusedRFamily {
    Cplx eta{};
    ProjectorSet proj;
    PolyOp r;               // on V (x) V
    PolyOp r_bar;           // on Vbar (x) V
    PolyOp r_bar_prime;     // on Vbarp (x) V
    PolyOp r_tilde;         // on Vtil (x) V
    PolyOp r_tilde_prime;   // on Vtilp (x) V
    PolyOp r_barprime_bar;  // on Vbarp (x) Vbar
    double max_fusion_remainder = 0;  // worst relative remainder over all divisions
};

FusedRFamily build_fused_family(Cplx eta);

Cplx rho3(Cplx u, Cplx eta);  // -(u+3eta/2)(u-3eta/2)
Cplx rho4(Cplx u, Cplx eta);  // -(u+eta/2)(u-eta/2)
Cplx rho5(Cplx u, Cplx eta);
Cplx rho6(Cplx u, Cplx eta);

// Degenerate-point identities.
double check_p8_degeneracy(const FusedRFamily& f);    // R(eta) = 2 eta P8
double check_p8bar_degeneracy(const FusedRFamily& f); // R(-eta) = -2 eta P8bar
double check_p20_degeneracy(const FusedRFamily& f);   // Rbar(-3eta/2) = -3 eta P20
double check_p20t_degeneracy(const FusedRFamily& f);  // Rbarp(3eta/2) = 3 eta P20t

enum class FusedKind { bar, bar_prime, tilde, tilde_prime, barprime_bar };

// Mixed Yang-Baxter residual R_X2(u-v) R_X3(u) R_23(v) = reverse.
double check_fused_ybe(const FusedRFamily& f, FusedKind kind, Cplx u, Cplx v);

// R_X2(u) R_2X(-u) = rho id; with super transposition in the fused space for
// the crossing variant.
double check_fused_unitarity(const FusedRFamily& f, FusedKind kind, Cplx u);
double check_fused_crossing(const FusedRFamily& f, FusedKind kind, Cplx u);

// Coefficient-level residual of r_tilde == r_tilde_prime under the index-wise
// basis identification between the two 20-dimensional spaces.
double check_closure(const FusedRFamily& f);

}  // namespace su22
