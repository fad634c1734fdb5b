#pragma once

#include "su22/fusion.hpp"

#include <vector>

namespace su22 {

struct ChainConfig {
    int N = 1;
    Cplx eta{0.5, 0.0};
    std::vector<Cplx> thetas;

    ChainConfig() = default;
    ChainConfig(int n, Cplx e, std::vector<Cplx> th);
    static ChainConfig homogeneous(int n, Cplx e);

    // Pairwise distinct thetas with differences away from {0, +-eta}; the
    // fixed-point identity prefactors are then nonzero.
    bool thetas_generic(double tol = 1e-6) const;

    Poly q0() const;  // prod (u - theta_j)
};

enum class MonodromyKind { fundamental, bar, bar_prime, tilde, tilde_prime };

const PolyOp& fused_r_for(const FusedRFamily& f, MonodromyKind kind);
GradedSpace aux_space_for(const FusedRFamily& f, MonodromyKind kind);

// Layout [aux, site_1, ..., site_N].
TensorLayout chain_layout(const FusedRFamily& f, MonodromyKind kind, int n);

// T_0(u) = R_01(u - th_1) ... R_0N(u - th_N) as an operator polynomial on the
// chain layout.
PolyOp monodromy_poly(const FusedRFamily& f, MonodromyKind kind, const ChainConfig& cfg);

// That_0(u) = R_N0(u + th_N) ... R_10(u + th_1); for this model R_j0 and R_0j
// coincide as embedded operators, so only the factor order differs.
PolyOp reflecting_monodromy_poly(const FusedRFamily& f, MonodromyKind kind,
                                 const ChainConfig& cfg);

// Point evaluation that never materialises the polynomial, for the large
// 20-dimensional auxiliary spaces.
GradedOperator monodromy_at(const FusedRFamily& f, MonodromyKind kind, Cplx u,
                            const ChainConfig& cfg, bool reflecting = false);

// Transfer matrix of one kind: super trace of the monodromy over the aux slot.
PolyOp periodic_transfer(const FusedRFamily& f, MonodromyKind kind, const ChainConfig& cfg);
GradedOperator periodic_transfer_at(const FusedRFamily& f, MonodromyKind kind, Cplx u,
                                    const ChainConfig& cfg);

struct TransferFamily {
    ChainConfig cfg;
    PolyOp t, t1, t2;
};

TransferFamily build_periodic_family(const FusedRFamily& f, const ChainConfig& cfg);

// RTT residual for one monodromy kind at (u, v).
double check_rtt(const FusedRFamily& f, MonodromyKind kind, Cplx u, Cplx v,
                 const ChainConfig& cfg);

// Monodromy-level fusion relations (projector sandwich of two monodromies
// equals a prefactor times the fused monodromy), as polynomial residuals.
// which = 0..3 selects the p8 / p8bar / p20 / p20t relation.
double check_monodromy_fusion(const FusedRFamily& f, int which, const ChainConfig& cfg);

// The three full polynomial decompositions of transfer-matrix products. The
// two complement terms are reconstructed from (id - P20) sandwiches with an
// exact division by prod(u - theta_j); remainders are reported.
struct PeriodicDecompositions {
    double product_rule = 0;     // t(u) t(u+eta) decomposition
    double tilde_rule_1 = 0;     // t1(u+eta/2) t(u-eta) decomposition
    double tilde_rule_2 = 0;     // t2(u-eta/2) t(u+eta) decomposition
    double complement_rem_1 = 0; // divisibility of the complement sandwich
    double complement_rem_2 = 0;
    double tilde_equal = 0;      // t1-tilde == t2-tilde as polynomials
};
PeriodicDecompositions check_periodic_decompositions(const FusedRFamily& f,
                                                     const ChainConfig& cfg);

// Fixed-point identities at u = theta_j and the closed three-family
// constraint; returns one residual per identity instance.
std::vector<double> check_fixed_point_identities(const FusedRFamily& f, const ChainConfig& cfg);

// Homogeneous-chain Hamiltonian t'(0) t(0)^{-1}.
GradedOperator hamiltonian_periodic(const FusedRFamily& f, int n);

}  // namespace su22
