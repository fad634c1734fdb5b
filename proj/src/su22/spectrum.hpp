#pragma once

#include "core/poly_op.hpp"

#include <vector>

namespace su22 {

// One joint eigenstate of a commuting operator family: the eigenvalue
// polynomial of every family member, extracted in a common eigenbasis.
struct SpectrumRecord {
    std::vector<Poly> values;   // one polynomial per family member
    int cluster = -1;           // records sharing values[0] up to tolerance
    Cplx u_hat{0, 0}, q_hat{0, 0};
    bool flagged = false;       // defective cluster; excluded from matching
    int matched = -1;           // index into the candidate list
    double match_deviation = 1e18;

    const Poly& lambda() const { return values.front(); }
};

struct SpectrumOptions {
    Cplx anchor1{0.3778, 0.2132};
    Cplx anchor2{-0.7113, 0.1572};
    double cluster_tol = 1e-8;
};

// Joint diagonalisation of a commuting polynomial family. family[0] drives
// the eigenbasis; degenerate clusters are split by family[0] at a second
// anchor, then the remaining members, then the extra diagonal charges.
// Eigenvalue polynomials come out coefficient-wise as diagonals of the
// conjugated coefficient matrices.
struct SpectrumResult {
    std::vector<SpectrumRecord> records;
    double joint_offdiag = 0;   // worst relative off-diagonal mass seen
    double trace_residual = 0;  // sum of values[0] vs trace polynomial
};
SpectrumResult exact_spectrum(const std::vector<const PolyOp*>& family,
                              const std::vector<const Mat*>& charges,
                              const SpectrumOptions& opts = {});

// Greedy matching of candidate eigenvalue polynomials against the records,
// by sup-norm relative deviation on a fixed grid.
struct MatchReport {
    int matched = 0, unmatched = 0;
    double worst_matched_deviation = 0;
};
MatchReport match_spectrum(std::vector<SpectrumRecord>& records,
                           const std::vector<Poly>& candidates, double threshold,
                           const std::vector<Cplx>& grid);

std::vector<Cplx> default_match_grid();

// Energies. Periodic: d/du log Lambda at 0. Open: Lambda(0) = 0, so the
// normalised form (1/2) d/du log(Lambda(u)/u) at 0 is used, matching the
// Hamiltonian convention.
Cplx energy_periodic(const Poly& lambda);
Cplx energy_open(const Poly& lambda);

}  // namespace su22
