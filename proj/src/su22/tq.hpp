#pragma once

#include "su22/boundary.hpp"
#include "su22/periodic.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace su22 {

// Bethe roots grouped by nesting level. For the open chain the counts are
// tied to the boundary-charge sector: L2 = k, L1 = L2 + N + 4,
// L3 = 2N + L2 + 4. Periodic counts are free.
struct BetheState {
    int sector_k = -1;
    std::vector<Cplx> r1, r2, r3;
    // Signs of the two square roots in the boundary factors; the paper leaves
    // both branches free and states can live on any of the four sign pairs.
    int branch = +1;
    int branch_tilde = +1;

    int l1() const { return static_cast<int>(r1.size()); }
    int l2() const { return static_cast<int>(r2.size()); }
    int l3() const { return static_cast<int>(r3.size()); }
};

bool open_root_counts_ok(const BetheState& s, int n);

// ---------------------------------------------------------------------------
// Periodic T-Q relations.
// ---------------------------------------------------------------------------
class PeriodicTQ {
  public:
    PeriodicTQ(ChainConfig cfg) : cfg_(std::move(cfg)) {}

    Cplx q(int m, Cplx u, const BetheState& s) const;  // m = 0..4
    std::optional<Cplx> z(int l, Cplx u, const BetheState& s) const;
    std::optional<Cplx> lambda(Cplx u, const BetheState& s) const;
    std::optional<Cplx> lambda1(Cplx u, const BetheState& s) const;
    std::optional<Cplx> lambda2(Cplx u, const BetheState& s) const;

    // Cleared-denominator residue conditions (authoritative formulation),
    // magnitude-balanced; one entry per root.
    std::vector<Cplx> bae_residuals(const BetheState& s) const;
    // Verbatim printed conditions; the second family is degenerate and kept
    // only for the audit report.
    std::vector<Cplx> printed_bae_residuals(const BetheState& s) const;

    // Functional-relation residuals at the inhomogeneity points (3N values).
    std::vector<double> functional_relation_residuals(const BetheState& s) const;

    const ChainConfig& cfg() const { return cfg_; }

  private:
    ChainConfig cfg_;
};

// ---------------------------------------------------------------------------
// Open-chain inhomogeneous T-Q relations.
// ---------------------------------------------------------------------------
class OpenTQ {
  public:
    // lambda2_reading selects the z index in the final correction term of the
    // second fused eigenvalue: 3 restores the symmetry with the first one,
    // 2 is the verbatim reading. Both are kept for the audit mode.
    OpenTQ(ChainConfig cfg, BoundaryConfig bc, int lambda2_reading = 3)
        : cfg_(std::move(cfg)), bc_(bc), lambda2_reading_(lambda2_reading) {}

    Cplx q(int m, Cplx u, const BetheState& s) const;            // m = 0..4
    Cplx kfun(int l, Cplx u, int sb, int stb) const;             // boundary factors
    Cplx alpha(int l, Cplx u) const;                             // structure factors
    Cplx fpoly(int l, Cplx u, int sb, int stb) const;            // degree-8 prefactors
    std::optional<Cplx> x1(Cplx u, const BetheState& s) const;
    std::optional<Cplx> x2(Cplx u, const BetheState& s) const;
    std::optional<Cplx> z(int l, Cplx u, const BetheState& s) const;
    std::optional<Cplx> zt(int l, Cplx u, const BetheState& s) const;
    std::optional<Cplx> lambda(Cplx u, const BetheState& s) const;
    std::optional<Cplx> lambda1(Cplx u, const BetheState& s) const;
    std::optional<Cplx> lambda2(Cplx u, const BetheState& s) const;

    std::vector<Cplx> bae_residuals(const BetheState& s) const;

    // The 6N+13 scalar conditions on (lambda, lambda1, lambda2): functional
    // relations at +-theta_j, special values, asymptotic coefficients and
    // sector membership. Returns one residual per condition.
    std::vector<double> condition_residuals(const Poly& lam, const Poly& lam1, const Poly& lam2,
                                            int sector_k) const;

    const ChainConfig& cfg() const { return cfg_; }
    const BoundaryConfig& bc() const { return bc_; }
    int lambda2_reading() const { return lambda2_reading_; }

  private:
    Cplx sroot(int branch) const;
    Cplx sroot_tilde(int branch) const;
    ChainConfig cfg_;
    BoundaryConfig bc_;
    int lambda2_reading_;
};

// ---------------------------------------------------------------------------
// Polynomial reconstruction utilities.
// ---------------------------------------------------------------------------

// Interpolate a degree-d polynomial from d+1 samples on a circle; exact for
// polynomials, systematically wrong for functions with poles inside.
Poly interpolate_on_circle(const std::function<std::optional<Cplx>(Cplx)>& f, int degree,
                           Cplx center, double radius, bool* ok);

// Max relative deviation between f and p on held-out circle points.
double held_out_deviation(const std::function<std::optional<Cplx>(Cplx)>& f, const Poly& p,
                          Cplx center, double radius, int npoints);

// Contour residue estimate of f at z0 (radius rho, m samples), normalised by
// the largest |f| on the contour times rho.
double relative_residue(const std::function<std::optional<Cplx>(Cplx)>& f, Cplx z0, double rho,
                        int m);

// Certificate: interpolation at degree+1 points away from roots reproduces f
// at held-out points, and all pole residues are small.
struct PolynomialCertificate {
    Poly poly;
    double held_out = 1e9;
    double max_residue = 1e9;
    bool ok = false;
};
PolynomialCertificate certify_polynomial(const std::function<std::optional<Cplx>(Cplx)>& f,
                                         int degree, const std::vector<Cplx>& pole_candidates,
                                         double scale_hint);

}  // namespace su22
