#pragma once

#include "su22/boundary.hpp"
#include "su22/periodic.hpp"

namespace su22 {

// Double-row transfer matrices t(u), t1(u), t2(u) on the 4^N quantum space.
// Degrees: 2N+2 for t, 2N+4 for the fused pair.
struct OpenTransferFamily {
    ChainConfig cfg;
    BoundaryConfig bc;
    PolyOp t, t1, t2;
};

// str_aux{ K+(u) T(u) K-(u) That(u) } for one auxiliary kind.
PolyOp open_transfer(const FusedRFamily& f, const FusedKFamily& k, MonodromyKind kind,
                     const ChainConfig& cfg);
GradedOperator open_transfer_at(const FusedRFamily& f, const FusedKFamily& k, MonodromyKind kind,
                                Cplx u, const ChainConfig& cfg);

OpenTransferFamily build_open_family(const FusedRFamily& f, const FusedKFamily& k,
                                     const ChainConfig& cfg);

// Reflecting-monodromy exchange relation residual.
double check_reflecting_rtt(const FusedRFamily& f, Cplx u, Cplx v, const ChainConfig& cfg);

// The six operator product identities at x = +-theta_j (three families, both
// signs), with the displayed scalar prefactors. Returns 6N residuals.
std::vector<double> check_open_identities(const FusedRFamily& f, const FusedKFamily& k,
                                          const ChainConfig& cfg);

// Appendix-level identities at x = +-theta_j relating products to the
// 20-dimensional fused transfer matrices. Returns 4N residuals.
std::vector<double> check_open_tilde_identities(const FusedRFamily& f, const FusedKFamily& k,
                                                const ChainConfig& cfg);

struct OpenSpecialValues {
    double t_zero, t1_zero, t2_zero;       // t(0), t1(0), t2(0) norms (relative)
    double t1_plus, t1_minus;              // t1(+-eta/2) = -2 xi xit t(+-eta)
    double t2_plus, t2_minus;              // t2(+-eta/2) = +2 xi xit t(+-eta)
    double derivative_sum;                 // t1'(0) + t2'(0) = 0
    double worst() const;
};
OpenSpecialValues check_open_special_values(const OpenTransferFamily& fam);

struct OpenAsymptotics {
    double t_leading;            // vs -[c1 ct2 + ct1 c2 - c3 ct4 - ct3 c4] id
    double t1_leading;
    double t2_leading_symmetric; // symmetric reading of the displayed scalar
    double t2_leading_printed;   // verbatim parenthesisation
    double t_degree_excess;      // coefficient mass above 2N+2
    double t1_degree_excess;
    double u_hat;                // coeff_{2N+1}(t) vs -eta Uhat
    double q_hat;                // coeff_{2N+3}(t1) vs -4 eta Qhat
    double u_hat_diagonality;
    double q_hat_diagonality;
};
OpenAsymptotics check_open_asymptotics(const OpenTransferFamily& fam);

GradedOperator u_hat_operator(int n, const BoundaryConfig& bc);
GradedOperator q_hat_operator(int n, const BoundaryConfig& bc);
// Closed-form N+1 distinct eigenvalues, k = 0..N.
std::vector<Cplx> u_hat_levels(int n, const BoundaryConfig& bc);
std::vector<Cplx> q_hat_levels(int n, const BoundaryConfig& bc);
// Multiplicity of level k is binomial(N,k) 2^N.
long level_multiplicity(int n, int k);

// Full polynomial decompositions of the open products, complement terms
// reconstructed by exact division.
struct OpenDecompositions {
    double product_rule;
    double tilde_rule_1, tilde_rule_2;
    double complement_rem_1, complement_rem_2;
    double tilde_equal;
};
OpenDecompositions check_open_decompositions(const FusedRFamily& f, const FusedKFamily& k,
                                             const ChainConfig& cfg);

// Homogeneous-chain open Hamiltonian, (1/2) d/du log(t(u)/u) at u = 0.
GradedOperator hamiltonian_open(const FusedRFamily& f, const FusedKFamily& k, int n);

}  // namespace su22
