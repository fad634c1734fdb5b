#include <doctest.h>

#include "su22/open_chain.hpp"
#include "su22/spectrum.hpp"

#include <Eigen/Eigenvalues>

using namespace su22;

namespace {
const Cplx kEta{0.5, 0};
}

TEST_CASE("two-site periodic spectrum: trace identity and anchor independence") {
    const FusedRFamily f = build_fused_family(kEta);
    const ChainConfig cfg(2, kEta, {{0.3, 0}, {-0.2, 0}});
    const TransferFamily fam = build_periodic_family(f, cfg);
    SpectrumResult spec = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {});
    REQUIRE(spec.records.size() == 16);
    CHECK(spec.trace_residual < 1e-10);
    CHECK(spec.joint_offdiag < 1e-9);
    // two degenerate clusters of eight
    int nclusters = 0;
    for (const auto& r : spec.records) nclusters = std::max(nclusters, r.cluster + 1);
    CHECK(nclusters == 2);

    SpectrumOptions alt;
    alt.anchor1 = {0.91, -0.31};
    alt.anchor2 = {-0.27, 0.63};
    SpectrumResult spec2 = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {}, alt);
    std::vector<Poly> lams;
    for (const auto& r : spec2.records) lams.push_back(r.lambda());
    MatchReport mr = match_spectrum(spec.records, lams, 1e-9, default_match_grid());
    CHECK(mr.unmatched == 0);
    CHECK(mr.worst_matched_deviation < 1e-9);
}

TEST_CASE("matching reports unmatched records without inventing matches") {
    const FusedRFamily f = build_fused_family(kEta);
    const ChainConfig cfg(1, kEta, {{0.17, 0}});
    const TransferFamily fam = build_periodic_family(f, cfg);
    SpectrumResult spec = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {});
    MatchReport none = match_spectrum(spec.records, {}, 1e-6, default_match_grid());
    CHECK(none.matched == 0);
    CHECK(none.unmatched == 4);
    // duplicate candidates collapse onto the same record set
    const Poly lam = spec.records[0].lambda();
    MatchReport dup = match_spectrum(spec.records, {lam, lam}, 1e-6, default_match_grid());
    CHECK(dup.matched == 4);
    for (const auto& r : spec.records) CHECK(r.matched >= 0);
}

TEST_CASE("periodic energies equal the Hamiltonian spectrum") {
    const FusedRFamily f = build_fused_family(kEta);
    const ChainConfig hom = ChainConfig::homogeneous(2, kEta);
    const TransferFamily fam = build_periodic_family(f, hom);
    SpectrumResult spec = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {});
    const GradedOperator h = hamiltonian_periodic(f, 2);
    Eigen::ComplexEigenSolver<Mat> es(h.mat);
    std::vector<Cplx> he(es.eigenvalues().data(), es.eigenvalues().data() + 16);
    std::vector<Cplx> le;
    for (const auto& r : spec.records) le.push_back(energy_periodic(r.lambda()));
    auto cmp = [](Cplx a, Cplx b) {
        return std::real(a) != std::real(b) ? std::real(a) < std::real(b)
                                            : std::imag(a) < std::imag(b);
    };
    std::sort(he.begin(), he.end(), cmp);
    std::sort(le.begin(), le.end(), cmp);
    for (int i = 0; i < 16; ++i) CHECK(std::abs(he[i] - le[i]) < 1e-8);
}

TEST_CASE("constant shifts move all energies uniformly") {
    const FusedRFamily f = build_fused_family(kEta);
    const GradedOperator h = hamiltonian_periodic(f, 2);
    const Cplx shift{0.37, 0};
    Eigen::ComplexEigenSolver<Mat> e1(h.mat);
    Eigen::ComplexEigenSolver<Mat> e2(
        Mat(h.mat + shift * Mat::Identity(h.mat.rows(), h.mat.cols())));
    std::vector<Cplx> a(e1.eigenvalues().data(), e1.eigenvalues().data() + h.mat.rows());
    std::vector<Cplx> b(e2.eigenvalues().data(), e2.eigenvalues().data() + h.mat.rows());
    auto cmp = [](Cplx x, Cplx y) {
        return std::real(x) != std::real(y) ? std::real(x) < std::real(y)
                                            : std::imag(x) < std::imag(y);
    };
    std::sort(a.begin(), a.end(), cmp);
    std::sort(b.begin(), b.end(), cmp);
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] - a[i] - shift) < 1e-10);
}

TEST_CASE("open one-site records carry boundary charge labels in the level sets") {
    const FusedRFamily f = build_fused_family({0.6, 0});
    const BoundaryConfig bc = BoundaryConfig::checked(
        {1.3, 0.0}, {0.8, 0.0},
        {Cplx{0.6, 0.0}, Cplx{0.5, 0.0}, Cplx{0.3, 0.0}, Cplx{1.0, 0.0}},
        {Cplx{0.4, 0.0}, Cplx{0.7, 0.0}, Cplx{0.35, 0.0}, Cplx{0.8, 0.0}});
    const FusedKFamily k = build_fused_k(f, bc);
    const ChainConfig cfg(1, {0.6, 0}, {{0.37, 0}});
    const OpenTransferFamily fam = build_open_family(f, k, cfg);
    const GradedOperator uh = u_hat_operator(1, bc), qh = q_hat_operator(1, bc);
    SpectrumResult spec = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {&uh.mat, &qh.mat});
    REQUIRE(spec.records.size() == 4);
    const auto ulev = u_hat_levels(1, bc);
    const auto qlev = q_hat_levels(1, bc);
    for (const auto& r : spec.records) {
        double bu = 1e18, bq = 1e18;
        for (const Cplx& l : ulev) bu = std::min(bu, std::abs(r.u_hat - l));
        for (const Cplx& l : qlev) bq = std::min(bq, std::abs(r.q_hat - l));
        CHECK(bu < 1e-9);
        CHECK(bq < 1e-9);
        // the sub-leading coefficient of Lambda sits in the level set
        const Cplx coeff = r.lambda().coeff(3) / (-cfg.eta);
        double bc2 = 1e18;
        for (const Cplx& l : ulev) bc2 = std::min(bc2, std::abs(coeff - l));
        CHECK(bc2 < 1e-9);
    }
}
