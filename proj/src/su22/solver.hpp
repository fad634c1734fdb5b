#pragma once

#include "su22/tq.hpp"

namespace su22 {

struct SolverOptions {
    int max_iterations = 120;
    double tolerance = 1e-11;       // on the balanced residual vector
    int starts = 64;
    double seed_scale = 1.5;        // box half-width of random starts
    double dedup_tolerance = 1e-6;
    // Restrict the open quotient coefficients to real values. Valid whenever
    // eta, thetas, boundary data and the target all have real coefficients:
    // the root multiset is then conjugation symmetric. Halves the search
    // dimension; ignored when the inputs are genuinely complex.
    bool allow_real_reduction = true;
};

struct SolvedState {
    BetheState state;
    double residual = 1e9;
    bool converged = false;
};

// Damped Gauss-Newton on a holomorphic residual map F: C^m -> C^n (n >= m)
// with numerical Jacobian and backtracking; returns the final residual norm.
double damped_newton(const std::function<std::vector<Cplx>(const std::vector<Cplx>&)>& f,
                     std::vector<Cplx>& x, const SolverOptions& opts);

// Same over real unknowns, stacking real and imaginary residual parts.
double damped_newton_real(const std::function<std::vector<Cplx>(const std::vector<double>&)>& f,
                          std::vector<double>& x, const SolverOptions& opts);

// Multi-start solve of the periodic Bethe equations in a fixed sector
// (L1, L2, L3). Deterministic given the rng stream.
std::vector<SolvedState> solve_bae_periodic(const PeriodicTQ& tq, int l1, int l2, int l3,
                                            Rng rng, const SolverOptions& opts = {});

// Multi-start solve of the open Bethe equations in boundary sector k for one
// square-root branch. Root-space Newton on the cleared residue conditions is
// hopeless here: root collisions annihilate every cleared term, producing
// attracting spurious varieties. Instead the Q-functions are parameterised by
// the coefficients of monic polynomials in w = u(u + m eta), which quotients
// out both the reflection pairing and root permutations, and the full cleared
// T-Q identity is enforced at sample points in the least-squares sense. When
// a target eigenvalue polynomial is supplied it pins the state; otherwise the
// free coefficients of Lambda join the unknowns (leading and sub-leading ones
// are fixed by the sector).
std::vector<SolvedState> solve_bae_open(const OpenTQ& tq, int sector_k, int branch,
                                        int branch_tilde, Rng rng, const SolverOptions& opts = {},
                                        const Poly* lambda_target = nullptr);

// Same engine with explicit root counts; individual states can shed roots to
// infinity, landing below the generic sector counts.
std::vector<SolvedState> solve_bae_open_counts(const OpenTQ& tq, int l1, int l2, int l3,
                                               int sector_k, int branch, int branch_tilde,
                                               Rng rng, const SolverOptions& opts = {},
                                               const Poly* lambda_target = nullptr);

}  // namespace su22
