#include "su22/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

namespace su22 {

namespace {

// Group indices whose values agree within tol * scale.
std::vector<std::vector<int>> group_close(const Vec& vals, double tol) {
    const int n = static_cast<int>(vals.size());
    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(vals(i)));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (std::real(vals(a)) != std::real(vals(b))) return std::real(vals(a)) < std::real(vals(b));
        return std::imag(vals(a)) < std::imag(vals(b));
    });
    std::vector<std::vector<int>> groups;
    for (int idx : order) {
        bool placed = false;
        if (!groups.empty()) {
            // compare against every member of the last few groups; eigenvalues
            // sorted lexicographically can interleave along the imaginary axis
            for (auto& g : groups) {
                if (std::abs(vals(g.front()) - vals(idx)) <= tol * scale) {
                    g.push_back(idx);
                    placed = true;
                    break;
                }
            }
        }
        if (!placed) groups.push_back({idx});
    }
    return groups;
}

// Diagonalise the restriction of op to the span of the given columns of v.
void refine_cluster(Mat& v, const std::vector<int>& cluster, const Mat& op) {
    const int k = static_cast<int>(cluster.size());
    Mat vc(v.rows(), k);
    for (int i = 0; i < k; ++i) vc.col(i) = v.col(cluster[i]);
    const Mat gram = vc.adjoint() * vc;
    const Mat m = gram.partialPivLu().solve(vc.adjoint() * op * vc);
    Eigen::ComplexEigenSolver<Mat> es(m);
    const Mat w = es.eigenvectors();
    Mat refined = vc * w;
    for (int i = 0; i < k; ++i) {
        refined.col(i).normalize();
        v.col(cluster[i]) = refined.col(i);
    }
}

}  // namespace

SpectrumResult exact_spectrum(const std::vector<const PolyOp*>& family,
                              const std::vector<const Mat*>& charges,
                              const SpectrumOptions& opts) {
    SpectrumResult out;
    const PolyOp& t0 = *family.front();
    const long n = t0.codomain().dim;

    const Mat a = t0.eval(opts.anchor1).mat;
    Eigen::ComplexEigenSolver<Mat> es(a);
    Mat v = es.eigenvectors();
    Vec vals = es.eigenvalues();

    // Split degenerate clusters with more family data.
    std::vector<Mat> refiners;
    refiners.push_back(t0.eval(opts.anchor2).mat);
    for (size_t i = 1; i < family.size(); ++i) refiners.push_back(family[i]->eval(opts.anchor1).mat);
    for (const Mat* q : charges) refiners.push_back(*q);

    {
        std::vector<std::vector<int>> groups = group_close(vals, opts.cluster_tol);
        for (const Mat& op : refiners) {
            bool any = false;
            for (const auto& g : groups)
                if (g.size() > 1) {
                    refine_cluster(v, g, op);
                    any = true;
                }
            if (!any) break;
            // regroup jointly on all already-used operators: a cluster stays
            // together only if every used operator is degenerate on it
            std::vector<std::vector<int>> next;
            for (const auto& g : groups) {
                if (g.size() == 1) {
                    next.push_back(g);
                    continue;
                }
                Mat vc(v.rows(), g.size());
                for (size_t i = 0; i < g.size(); ++i) vc.col(i) = v.col(g[i]);
                const Mat gram = vc.adjoint() * vc;
                const Mat d = gram.partialPivLu().solve(vc.adjoint() * op * vc);
                auto sub = group_close(d.diagonal(), opts.cluster_tol);
                for (const auto& sg : sub) {
                    std::vector<int> mapped;
                    for (int idx : sg) mapped.push_back(g[idx]);
                    next.push_back(std::move(mapped));
                }
            }
            groups = std::move(next);
        }
    }

    Eigen::FullPivLU<Mat> lu(v);
    const Mat vinv = lu.inverse();

    out.records.resize(n);
    for (long i = 0; i < n; ++i) out.records[i].values.resize(family.size());
    for (size_t fi = 0; fi < family.size(); ++fi) {
        const PolyOp& op = *family[fi];
        std::vector<std::vector<Cplx>> coeffs(n, std::vector<Cplx>(op.degree() + 1));
        for (int k = 0; k <= op.degree(); ++k) {
            const Mat d = vinv * op.coeff(k) * v;
            Mat off = d;
            off.diagonal().setZero();
            out.joint_offdiag =
                std::max(out.joint_offdiag, off.norm() / std::max(1.0, d.norm()));
            for (long i = 0; i < n; ++i) coeffs[i][k] = d(i, i);
        }
        for (long i = 0; i < n; ++i) out.records[i].values[fi] = Poly(std::move(coeffs[i]));
    }
    if (!charges.empty()) {
        const Mat d = vinv * (*charges[0]) * v;
        for (long i = 0; i < n; ++i) out.records[i].u_hat = d(i, i);
    }
    if (charges.size() > 1) {
        const Mat d = vinv * (*charges[1]) * v;
        for (long i = 0; i < n; ++i) out.records[i].q_hat = d(i, i);
    }

    // Cluster labels by the primary eigenvalue polynomial.
    int next_label = 0;
    for (long i = 0; i < n; ++i) {
        if (out.records[i].cluster >= 0) continue;
        out.records[i].cluster = next_label;
        for (long j = i + 1; j < n; ++j) {
            if (out.records[j].cluster >= 0) continue;
            const Poly diff = out.records[i].lambda() - out.records[j].lambda();
            if (diff.norm() <= 1e-7 * std::max(1.0, out.records[i].lambda().norm()))
                out.records[j].cluster = next_label;
        }
        ++next_label;
    }

    // Trace identity: sum of primary eigenvalues equals the trace polynomial.
    {
        Poly sum = Poly::zero();
        for (const auto& r : out.records) sum += r.lambda();
        std::vector<Cplx> tr(t0.degree() + 1);
        for (int k = 0; k <= t0.degree(); ++k) tr[k] = t0.coeff(k).trace();
        const Poly trace_poly{std::move(tr)};
        out.trace_residual =
            (sum - trace_poly).norm() / std::max(1.0, trace_poly.norm());
    }

    // Flag records living in clusters where conjugation failed to diagonalise.
    if (out.joint_offdiag > 1e-6)
        for (auto& r : out.records) r.flagged = true;

    return out;
}

std::vector<Cplx> default_match_grid() {
    std::vector<Cplx> g;
    for (int i = 0; i < 10; ++i)
        g.push_back(Cplx{0.13 + 0.11 * i, 0.07 - 0.05 * i});
    return g;
}

MatchReport match_spectrum(std::vector<SpectrumRecord>& records,
                           const std::vector<Poly>& candidates, double threshold,
                           const std::vector<Cplx>& grid) {
    MatchReport rep;
    for (auto& r : records) {
        r.matched = -1;
        r.match_deviation = 1e18;
        if (r.flagged) continue;
        for (size_t c = 0; c < candidates.size(); ++c) {
            double dev = 0;
            for (const Cplx& u : grid) {
                const Cplx a = r.lambda().eval(u);
                const Cplx b = candidates[c].eval(u);
                dev = std::max(dev, std::abs(a - b) / std::max(1.0, std::abs(a)));
            }
            if (dev < r.match_deviation) {
                r.match_deviation = dev;
                r.matched = static_cast<int>(c);
            }
        }
        if (r.matched >= 0 && r.match_deviation <= threshold) {
            ++rep.matched;
            rep.worst_matched_deviation = std::max(rep.worst_matched_deviation, r.match_deviation);
        } else {
            r.matched = -1;
            ++rep.unmatched;
        }
    }
    return rep;
}

Cplx energy_periodic(const Poly& lambda) {
    return lambda.derivative().eval({0, 0}) / lambda.eval({0, 0});
}

Cplx energy_open(const Poly& lambda) {
    // Lambda(0) = 0; use s(u) = Lambda/u and E = (1/2) s'(0)/s(0).
    return 0.5 * lambda.coeff(2) / lambda.coeff(1);
}

}  // namespace su22
