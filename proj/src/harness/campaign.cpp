#include "harness/campaign.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace su22 {

namespace {

using Json = nlohmann::ordered_json;

bool parse_complex(const Json& j, Cplx* out) {
    if (j.is_number()) {
        *out = Cplx{j.get<double>(), 0.0};
        return true;
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        *out = Cplx{j[0].get<double>(), j[1].get<double>()};
        return true;
    }
    return false;
}

Json dump_complex(Cplx v) { return Json::array({std::real(v), std::imag(v)}); }

struct Report {
    std::vector<CheckRow>& rows;
    double scale;

    void add(const std::string& id, const std::string& desc, double residual, double threshold,
             const std::string& note = "") {
        CheckRow r;
        r.id = id;
        r.description = desc;
        r.residual = residual;
        r.threshold = threshold * scale;
        r.pass = residual <= r.threshold;
        r.note = note;
        rows.push_back(std::move(r));
    }

    void info(const std::string& id, const std::string& desc, double value,
              const std::string& note = "") {
        CheckRow r;
        r.id = id;
        r.description = desc;
        r.residual = value;
        r.threshold = 0;
        r.pass = true;
        r.note = note.empty() ? "informational" : note;
        rows.push_back(std::move(r));
    }
};

double vecmax(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, x);
    return m;
}

std::vector<std::pair<int, int>> branch_pairs(const std::string& branch) {
    if (branch == "plus") return {{+1, +1}};
    if (branch == "minus") return {{-1, -1}};
    return {{+1, +1}, {-1, -1}, {+1, -1}, {-1, +1}};
}

// ---------------------------------------------------------------------------
// verify-periodic
// ---------------------------------------------------------------------------
void run_verify_periodic(const Campaign& c, Report& rep) {
    Rng rng = Rng(c.seed);
    const Cplx eta = c.chain.eta;
    FusedRFamily f = build_fused_family(eta);

    {
        Rng r = rng.fork(1);
        double worst = 0;
        for (int i = 0; i < 50; ++i)
            worst = std::max(worst, check_gybe(r.box(1.5), r.box(1.5), eta));
        rep.add("gybe", "graded Yang-Baxter equation on V^3", worst, 1e-12, "50 samples");
    }
    rep.add("regularity", "R(0) = eta P", rel_residual(f.r.eval({0, 0}),
            graded_permutation(f.proj.v) * eta), 1e-14);
    {
        Rng r = rng.fork(2);
        double w1 = 0, w2 = 0;
        for (int i = 0; i < 10; ++i) {
            w1 = std::max(w1, check_unitarity(r.box(1.5), eta));
            w2 = std::max(w2, check_crossing_unitarity(r.box(1.5), eta));
        }
        rep.add("unitarity", "R12(u) R21(-u) = rho1 id", w1, 1e-12, "10 samples");
        rep.add("crossing-unitarity", "R12^st1(-u) R21^st1(u) = rho2 id", w2, 1e-12, "10 samples");
    }
    rep.add("Int-R1", "R(eta) = 2 eta P8", check_p8_degeneracy(f), 1e-12);
    rep.add("2-pewrerroject", "R(-eta) = -2 eta P8bar", check_p8bar_degeneracy(f), 1e-12);
    rep.add("Fusion-5-4", "Rbar(-3eta/2) = -3 eta P20", check_p20_degeneracy(f), 1e-11);
    rep.add("Fusion-20-1", "Rbarp(3eta/2) = 3 eta P20t", check_p20t_degeneracy(f), 1e-11);
    rep.add("fusion-remainders", "all fused-R prefactor divisions exact",
            f.max_fusion_remainder, 1e-10);
    {
        Rng r = rng.fork(3);
        double w[5] = {0, 0, 0, 0, 0};
        const FusedKind kinds[5] = {FusedKind::bar, FusedKind::bar_prime, FusedKind::tilde,
                                    FusedKind::tilde_prime, FusedKind::barprime_bar};
        for (int i = 0; i < 10; ++i) {
            const Cplx u = r.box(1.5), v = r.box(1.5);
            for (int k = 0; k < 5; ++k) w[k] = std::max(w[k], check_fused_ybe(f, kinds[k], u, v));
        }
        rep.add("fuse-qybe1", "fused YBE, 8-dim symmetric aux", w[0], 1e-11, "10 samples");
        rep.add("fuse-qybe2", "fused YBE, 8-dim antisymmetric aux", w[1], 1e-11, "10 samples");
        rep.add("sdfu-22", "fused YBE, 20-dim aux", w[2], 1e-11, "10 samples");
        rep.add("fwusdfwa-44", "fused YBE, 20-dim primed aux", w[3], 1e-11, "10 samples");
        rep.add("sdfusdsd-22", "quantum-space fused YBE", w[4], 1e-10, "10 samples");
    }
    {
        Rng r = rng.fork(4);
        double wu = 0, wc = 0;
        for (int i = 0; i < 10; ++i) {
            const Cplx u = r.box(1.5);
            wu = std::max({wu, check_fused_unitarity(f, FusedKind::bar, u),
                           check_fused_unitarity(f, FusedKind::bar_prime, u)});
            wc = std::max({wc, check_fused_crossing(f, FusedKind::bar, u),
                           check_fused_crossing(f, FusedKind::bar_prime, u)});
        }
        rep.add("rho3-rho5", "fused unitarity scalars", wu, 1e-11, "10 samples");
        rep.add("rho4-rho6", "fused crossing scalars", wc, 1e-11, "10 samples");
    }
    rep.add("peri-iden", "closure Rtilde == Rtilde-prime, coefficient level", check_closure(f),
            1e-10);

    {
        Rng r = rng.fork(5);
        double w = 0;
        for (int i = 0; i < 5; ++i)
            w = std::max(w, check_rtt(f, MonodromyKind::fundamental, r.box(1.2), r.box(1.2),
                                      c.chain));
        rep.add("ybe", "RTT exchange relation, fundamental monodromy", w, 1e-11, "5 samples");
        double wf = 0;
        for (MonodromyKind kind : {MonodromyKind::bar, MonodromyKind::bar_prime})
            wf = std::max(wf, check_rtt(f, kind, r.box(1.2), r.box(1.2), c.chain));
        if (c.chain.N <= 2)
            for (MonodromyKind kind : {MonodromyKind::tilde, MonodromyKind::tilde_prime})
                wf = std::max(wf, check_rtt(f, kind, r.box(1.2), r.box(1.2), c.chain));
        rep.add("yybb4", "RTT exchange relations, fused monodromies", wf, 1e-11);
    }
    for (int w = 0; w < 4; ++w)
        rep.add("fut-6-" + std::to_string(w + 1), "monodromy fusion relation",
                check_monodromy_fusion(f, w, c.chain), 1e-10);

    TransferFamily fam = build_periodic_family(f, c.chain);
    rep.add("degree-t", "transfer matrices have degree N-1",
            std::max({double(fam.t.degree()), double(fam.t1.degree()),
                      double(fam.t2.degree())}) - (c.chain.N - 1),
            0.5, "degrees after trailing-coefficient trim");
    {
        Rng r = rng.fork(6);
        double w = 0;
        for (int i = 0; i < 10; ++i) {
            const Cplx u = r.box(1.5), v = r.box(1.5);
            const GradedOperator a = fam.t.eval(u), b = fam.t1.eval(v), cc = fam.t2.eval(v);
            w = std::max(w, rel_residual(a * b, b * a));
            w = std::max(w, rel_residual(a * cc, cc * a));
            w = std::max(w, rel_residual(b.mat * fam.t2.eval(u).mat,
                                         Mat(fam.t2.eval(u).mat * b.mat)) /
                                std::max(1.0, b.mat.norm()));
        }
        rep.add("commuting-family", "t, t1, t2 mutually commute", w, 1e-10, "10 sample pairs");
    }
    PeriodicDecompositions d = check_periodic_decompositions(f, c.chain);
    rep.add("fui-3tan", "t(u) t(u+eta) two-term decomposition, full polynomial",
            d.product_rule, 1e-9);
    rep.add("fui-3tan-1", "t1(u+eta/2) t(u-eta) decomposition, full polynomial", d.tilde_rule_1,
            1e-9);
    rep.add("fui-3tan-2", "t2(u-eta/2) t(u+eta) decomposition, full polynomial", d.tilde_rule_2,
            1e-9);
    rep.add("fui-3tan-rem", "complement sandwich divisibility",
            std::max(d.complement_rem_1, d.complement_rem_2), 1e-9);
    rep.add("futp-6", "tilde transfer matrices equal", d.tilde_equal, 1e-10);
    {
        const std::vector<double> fixed = check_fixed_point_identities(f, c.chain);
        rep.add("futp-4", "fixed-point product identities", vecmax(fixed), 1e-9,
                std::to_string(fixed.size()) + " instances incl. peri-ope-3");
    }
    {
        GradedOperator h = hamiltonian_periodic(f, c.chain.N);
        const ChainConfig hom = ChainConfig::homogeneous(c.chain.N, eta);
        const PolyOp t = periodic_transfer(f, MonodromyKind::fundamental, hom);
        Rng r = rng.fork(7);
        const GradedOperator tu = t.eval(r.box(1.0));
        rep.add("peri-Ham-commute", "[H, t(u)] = 0", rel_residual(h * tu, tu * h), 1e-10);
        const double fd = 1e-6;
        const Mat num = (t.eval({fd, 0}).mat - t.eval({-fd, 0}).mat) / (2 * fd);
        const Mat hfd =
            t.eval({0, 0}).mat.transpose().partialPivLu().solve(num.transpose()).transpose();
        rep.add("peri-Ham-fd", "H matches finite-difference log-derivative",
                (h.mat - hfd).norm() / std::max(1.0, h.mat.norm()), 1e-5);
    }
}

// ---------------------------------------------------------------------------
// verify-open
// ---------------------------------------------------------------------------
void run_verify_open(const Campaign& c, Report& rep) {
    Rng rng = Rng(c.seed);
    const Cplx eta = c.chain.eta;
    FusedRFamily f = build_fused_family(eta);
    const BoundaryConfig& bc = c.boundary;
    rep.add("constraint", "integrability constraint c1 c2 = c3 c4",
            bc.constraint_violation(), 1e-12);
    {
        Rng r = rng.fork(11);
        double w1 = 0, w2 = 0;
        for (int i = 0; i < 10; ++i) {
            const Cplx u = r.box(1.2), v = r.box(1.2);
            w1 = std::max(w1, check_reflection_equation(u, v, eta, bc));
            w2 = std::max(w2, check_dual_reflection_equation(u, v, eta, bc));
        }
        rep.add("r1", "graded reflection equation", w1, 1e-11, "10 samples");
        rep.add("r2", "graded dual reflection equation", w2, 1e-11, "10 samples");
        BoundaryConfig bad = bc;
        bad.c[2] += 0.5;
        const double neg = check_reflection_equation({0.83, 0.21}, {-0.37, 0.49}, eta, bad);
        rep.add("r1-negative-control", "violated constraint breaks the reflection equation",
                neg >= 1e-3 ? 0.0 : 1.0, 0.5, "residual with broken c3: " + std::to_string(neg));
    }
    rep.add("K-matrix-1", "K-(0) = xi id",
            rel_residual(k_minus({0, 0}, bc), GradedOperator::identity(f.proj.v) * bc.xi), 1e-14);

    FusedKFamily k = build_fused_k(f, bc);
    rep.add("open-k4-rem", "fused K prefactor divisions exact", k.max_fusion_remainder, 1e-10);
    rep.add("open-k4-deg", "8-dim fused K entries have degree <= 2",
            std::max({double(k.kb_minus.degree()), double(k.kb_plus.degree()),
                      double(k.kbp_minus.degree()), double(k.kbp_plus.degree())}) - 2.0,
            0.5);
    rep.add("fuseref4-deg", "20-dim fused K entries have degree <= 3",
            std::max({double(k.kt_minus.degree()), double(k.kt_plus.degree()),
                      double(k.ktp_minus.degree()), double(k.ktp_plus.degree())}) - 3.0,
            0.5);
    {
        Rng r = rng.fork(12);
        double w = 0, wre = 0;
        for (int i = 0; i < 5; ++i) {
            w = std::max(w, check_projector_absorption(f, bc, r.box(1.2)));
            wre = std::max(wre, check_fused_reflection_equation(f, k, r.box(1.2), r.box(1.2)));
        }
        rep.add("oled-3", "projector absorption in the reflection equation", w, 1e-11,
                "5 samples");
        rep.add("fused-re", "fused reflection equation, 8-dim aux", wre, 1e-11, "5 samples");
    }
    rep.add("k-iden-minus", "fused K- closure across the two 20-dim routes",
            check_k_closure_minus(k), 1e-10);
    rep.add("k-iden-plus", "fused K+ closure across the two 20-dim routes",
            check_k_closure_plus(k), 1e-10);
    {
        Rng r = rng.fork(13);
        rep.add("haishi0", "reflecting monodromy exchange relation",
                check_reflecting_rtt(f, r.box(1.2), r.box(1.2), c.chain), 1e-11);
    }

    OpenTransferFamily fam = build_open_family(f, k, c.chain);
    const int n = c.chain.N;
    rep.add("degree-t-open", "t has degree 2N+2", std::abs(double(fam.t.degree() - (2 * n + 2))),
            0.5);
    rep.add("degree-t12-open", "t1, t2 have degree 2N+4",
            std::max(std::abs(double(fam.t1.degree() - (2 * n + 4))),
                     std::abs(double(fam.t2.degree() - (2 * n + 4)))),
            0.5);
    {
        Rng r = rng.fork(14);
        const GradedOperator uh = u_hat_operator(n, bc), qh = q_hat_operator(n, bc);
        double w = 0;
        for (int i = 0; i < 10; ++i) {
            const Cplx u = r.box(1.2), v = r.box(1.2);
            const GradedOperator a = fam.t.eval(u), b1 = fam.t1.eval(v), b2 = fam.t2.eval(v);
            w = std::max(w, rel_residual(a * b1, b1 * a));
            w = std::max(w, rel_residual(a * b2, b2 * a));
            w = std::max(w, rel_residual(b1 * b2, b2 * b1));
            w = std::max(w, rel_residual(a * uh, uh * a));
            w = std::max(w, rel_residual(b1 * qh, qh * b1));
            w = std::max(w, rel_residual(uh * qh, qh * uh));
        }
        rep.add("opencom", "t, t1, t2, Uhat, Qhat mutually commute", w, 1e-10,
                "10 sample pairs");
    }
    rep.add("openident1-3", "open product identities at +-theta_j",
            vecmax(check_open_identities(f, k, c.chain)), 1e-8);
    rep.add("open-ope-1-2", "products against the 20-dim fused transfer matrices",
            vecmax(check_open_tilde_identities(f, k, c.chain)), 1e-8);
    {
        OpenSpecialValues sv = check_open_special_values(fam);
        rep.add("specialvalue4", "special values at 0, +-eta/2 and derivative sum", sv.worst(),
                1e-9);
    }
    {
        OpenAsymptotics a = check_open_asymptotics(fam);
        rep.add("openasym3-t", "leading coefficient of t", a.t_leading, 1e-10);
        rep.add("openasym3-t1", "leading coefficient of t1", a.t1_leading, 1e-10);
        rep.add("openasym3-t2", "leading coefficient of t2, symmetric reading",
                a.t2_leading_symmetric, 1e-10,
                "verbatim parenthesisation residual: " + std::to_string(a.t2_leading_printed));
        rep.add("degree-excess", "trailing coefficient mass above the stated degrees",
                std::max(a.t_degree_excess, a.t1_degree_excess), 1e-9);
        rep.add("openasym5", "u^{2N+1} coefficient of t equals -eta Uhat", a.u_hat, 1e-10);
        rep.add("openasym4", "u^{2N+3} coefficient of t1 equals -4 eta Qhat", a.q_hat, 1e-10);
        rep.add("uq-diagonal", "extracted charge coefficients are diagonal",
                std::max(a.u_hat_diagonality, a.q_hat_diagonality), 1e-11);
    }
    {
        // Closed-form level sets vs the diagonal entries, as multisets.
        const GradedOperator uh = u_hat_operator(n, bc), qh = q_hat_operator(n, bc);
        auto level_residual = [&](const GradedOperator& op, const std::vector<Cplx>& levels) {
            double worst = 0;
            std::vector<long> counts(levels.size(), 0);
            for (int i = 0; i < op.domain.dim; ++i) {
                double best = 1e18;
                size_t arg = 0;
                for (size_t l = 0; l < levels.size(); ++l)
                    if (std::abs(op.mat(i, i) - levels[l]) < best) {
                        best = std::abs(op.mat(i, i) - levels[l]);
                        arg = l;
                    }
                ++counts[arg];
                worst = std::max(worst, best);
            }
            for (size_t l = 0; l < levels.size(); ++l)
                if (counts[l] != level_multiplicity(n, static_cast<int>(l))) worst = 1.0;
            return worst;
        };
        rep.add("higher-1", "Uhat spectrum equals the closed-form level multiset",
                level_residual(uh, u_hat_levels(n, bc)), 1e-9);
        rep.add("higher-2", "Qhat spectrum equals the closed-form level multiset",
                level_residual(qh, q_hat_levels(n, bc)), 1e-9);
    }
    {
        OpenDecompositions d = check_open_decompositions(f, k, c.chain);
        rep.add("openident1-tan-1", "rho2-cleared product decomposition, full polynomial",
                d.product_rule, 1e-8);
        rep.add("tan", "first tilde decomposition, full polynomial", d.tilde_rule_1, 1e-8);
        rep.add("tan-09", "second tilde decomposition, full polynomial", d.tilde_rule_2, 1e-8);
        rep.add("tan-rem", "complement sandwich divisibility",
                std::max(d.complement_rem_1, d.complement_rem_2), 1e-8);
        rep.add("id0", "open tilde transfer matrices equal", d.tilde_equal, 1e-9);
    }
    if (bc.hermitian_mode()) {
        GradedOperator h = hamiltonian_open(f, k, n);
        rep.add("hh-hermitian", "open Hamiltonian hermitian under conjugate boundary pairs",
                (h.mat - Mat(h.mat.adjoint())).norm() / std::max(1.0, h.mat.norm()), 1e-10);
    }
}

// ---------------------------------------------------------------------------
// spectrum / solve / match helpers
// ---------------------------------------------------------------------------

struct PeriodicSolveOutput {
    std::vector<Poly> lambdas;
    std::vector<SolvedState> states;
    double worst_residual = 0;
    double worst_certificate = 0;
};

PeriodicSolveOutput solve_periodic_candidates(const ChainConfig& cfg, Rng rng) {
    PeriodicSolveOutput out;
    PeriodicTQ tq(cfg);
    SolverOptions opts;
    opts.starts = 40;
    const std::vector<std::array<int, 3>> sectors = {
        {0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {1, 1, 0}, {2, 1, 0}, {2, 1, 1},
        {2, 2, 1}, {3, 1, 0}, {3, 2, 1}, {3, 2, 2}};
    int tag = 0;
    for (const auto& sec : sectors) {
        if (sec[0] + sec[1] + sec[2] > 2 * cfg.N + 1) continue;
        auto sols = solve_bae_periodic(tq, sec[0], sec[1], sec[2], rng.fork(100 + tag++), opts);
        for (auto& s : sols) {
            auto fn = [&](Cplx u) { return tq.lambda(u, s.state); };
            std::vector<Cplx> poles = s.state.r1;
            for (const Cplx& x : s.state.r2) poles.push_back(x);
            for (const Cplx& x : s.state.r3) poles.push_back(x);
            PolynomialCertificate cert = certify_polynomial(fn, cfg.N - 1, poles, 2.0);
            if (!cert.ok) continue;
            bool dup = false;
            for (const Poly& p : out.lambdas)
                if ((p - cert.poly).norm() < 1e-7 * std::max(1.0, p.norm())) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            out.lambdas.push_back(cert.poly);
            out.states.push_back(s);
            out.worst_residual = std::max(out.worst_residual, s.residual);
            out.worst_certificate =
                std::max({out.worst_certificate, cert.held_out, cert.max_residue});
        }
    }
    return out;
}

struct OpenSolveOutput {
    std::vector<Poly> lambdas;
    std::vector<SolvedState> states;
    std::vector<int> record_of;  // which spectrum record each state was aimed at
    double worst_residual = 0;
    double worst_certificate = 0;
    int resistant = 0;
};

OpenSolveOutput solve_open_states(const ChainConfig& cfg, const BoundaryConfig& bc,
                                  const std::string& branch, int lambda2_reading,
                                  const SpectrumResult& spec, Rng rng) {
    OpenSolveOutput out;
    OpenTQ tq(cfg, bc, lambda2_reading);
    const std::vector<Cplx> ulev = u_hat_levels(cfg.N, bc);
    int rec_idx = -1;
    for (const SpectrumRecord& r : spec.records) {
        ++rec_idx;
        // skip duplicates of already-targeted eigenvalues
        bool seen = false;
        for (const Poly& p : out.lambdas)
            if ((p - r.lambda()).norm() < 1e-7 * std::max(1.0, p.norm())) seen = true;
        if (seen) continue;
        int sector = 0;
        double best = 1e18;
        for (size_t l = 0; l < ulev.size(); ++l)
            if (std::abs(r.u_hat - ulev[l]) < best) {
                best = std::abs(r.u_hat - ulev[l]);
                sector = static_cast<int>(l);
            }
        bool done = false;
        for (double scale : {1.0, 0.6, 1.6}) {
            for (auto [sb, stb] : branch_pairs(branch)) {
                SolverOptions opts;
                opts.starts = 250;
                opts.tolerance = 3e-10;
                opts.seed_scale = scale;
                auto sols = solve_bae_open(tq, sector, sb, stb,
                                           rng.fork(7000 + 100 * rec_idx + 10 * int(scale * 4) +
                                                    2 * (sb > 0) + (stb > 0)),
                                           opts, &r.lambda());
                for (auto& s : sols) {
                    auto fn = [&](Cplx u) { return tq.lambda(u, s.state); };
                    std::vector<Cplx> poles = s.state.r1;
                    for (const Cplx& x : s.state.r3) poles.push_back(x);
                    PolynomialCertificate cert =
                        certify_polynomial(fn, 2 * cfg.N + 2, poles, 3.0);
                    if (!cert.ok) continue;
                    if ((cert.poly - r.lambda()).norm() >
                        1e-6 * std::max(1.0, r.lambda().norm()))
                        continue;
                    out.lambdas.push_back(cert.poly);
                    out.states.push_back(s);
                    out.record_of.push_back(rec_idx);
                    out.worst_residual = std::max(out.worst_residual, s.residual);
                    out.worst_certificate =
                        std::max({out.worst_certificate, cert.held_out, cert.max_residue});
                    done = true;
                    break;
                }
                if (done) break;
            }
            if (done) break;
        }
        if (!done) ++out.resistant;
    }
    return out;
}

void run_spectrum(const Campaign& c, Report& rep) {
    Rng rng = Rng(c.seed);
    FusedRFamily f = build_fused_family(c.chain.eta);
    if (c.has_boundary) {
        FusedKFamily k = build_fused_k(f, c.boundary);
        OpenTransferFamily fam = build_open_family(f, k, c.chain);
        const GradedOperator uh = u_hat_operator(c.chain.N, c.boundary);
        const GradedOperator qh = q_hat_operator(c.chain.N, c.boundary);
        SpectrumResult spec = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {&uh.mat, &qh.mat});
        rep.add("spectrum-count", "one record per basis state",
                std::abs(double(spec.records.size()) - std::pow(4.0, c.chain.N)), 0.5);
        rep.add("spectrum-trace", "eigenvalues sum to the trace polynomial", spec.trace_residual,
                1e-9);
        rep.add("spectrum-joint", "family conjugates to joint diagonal form", spec.joint_offdiag,
                1e-8);
        SpectrumOptions alt;
        alt.anchor1 = {0.9111, -0.3033};
        alt.anchor2 = {-0.2871, 0.6417};
        SpectrumResult spec2 = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {&uh.mat, &qh.mat}, alt);
        std::vector<Poly> alt_lams;
        for (const auto& r : spec2.records) alt_lams.push_back(r.lambda());
        MatchReport mr = match_spectrum(spec.records, alt_lams, 1e-9, default_match_grid());
        rep.add("spectrum-anchors", "eigenvalue polynomials independent of the anchor point",
                double(mr.unmatched), 0.5);
        const std::vector<Cplx> ulev = u_hat_levels(c.chain.N, c.boundary);
        double worst = 0;
        for (const auto& r : spec.records) {
            const Cplx coeff = r.lambda().coeff(2 * c.chain.N + 1) / (-c.chain.eta);
            double best = 1e18;
            for (const Cplx& l : ulev) best = std::min(best, std::abs(coeff - l));
            worst = std::max(worst, best);
        }
        rep.add("higher-1-records", "per-record u^{2N+1} coefficient lies in the level set",
                worst, 1e-9);
        (void)rng;
    } else {
        TransferFamily fam = build_periodic_family(f, c.chain);
        SpectrumResult spec = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {});
        rep.add("spectrum-count", "one record per basis state",
                std::abs(double(spec.records.size()) - std::pow(4.0, c.chain.N)), 0.5);
        rep.add("spectrum-trace", "eigenvalues sum to the trace polynomial", spec.trace_residual,
                1e-9);
        rep.add("spectrum-joint", "family conjugates to joint diagonal form", spec.joint_offdiag,
                1e-8);
    }
}

void run_solve(const Campaign& c, Report& rep, bool with_match) {
    Rng rng = Rng(c.seed);
    FusedRFamily f = build_fused_family(c.chain.eta);
    if (!c.has_boundary) {
        TransferFamily fam = build_periodic_family(f, c.chain);
        SpectrumResult spec = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {});
        PeriodicSolveOutput sol = solve_periodic_candidates(c.chain, rng.fork(21));
        rep.add("solve-residuals", "Bethe-equation residuals of returned states",
                sol.worst_residual, 1e-9, std::to_string(sol.states.size()) + " states");
        rep.add("solve-certificates", "polynomiality certificates of returned states",
                sol.worst_certificate, 1e-8);
        if (with_match) {
            MatchReport mr = match_spectrum(spec.records, sol.lambdas, 1e-6,
                                            default_match_grid());
            rep.add("match-coverage", "every exact eigenvalue matched by a Bethe state",
                    double(mr.unmatched), 0.5,
                    std::to_string(mr.matched) + " matched, worst deviation " +
                        std::to_string(mr.worst_matched_deviation));
            PeriodicTQ tq(c.chain);
            double wfun = 0;
            for (const SolvedState& s : sol.states)
                wfun = std::max(wfun, vecmax(tq.functional_relation_residuals(s.state)));
            rep.add("futpl-3", "eigenvalue functional relations for solved states", wfun, 1e-8);
        }
        return;
    }
    FusedKFamily k = build_fused_k(f, c.boundary);
    OpenTransferFamily fam = build_open_family(f, k, c.chain);
    const GradedOperator uh = u_hat_operator(c.chain.N, c.boundary);
    const GradedOperator qh = q_hat_operator(c.chain.N, c.boundary);
    SpectrumResult spec = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {&uh.mat, &qh.mat});
    OpenSolveOutput sol = solve_open_states(c.chain, c.boundary, c.branch, c.lambda2_reading,
                                            spec, rng.fork(22));
    rep.add("open-solve-residuals", "Bethe-equation residuals of returned states",
            sol.worst_residual, 1e-9, std::to_string(sol.states.size()) + " states");
    rep.add("open-solve-certificates", "polynomiality certificates of returned states",
            sol.worst_certificate, 1e-8);
    rep.info("open-solve-resistant", "targets with no Newton-converged state",
             double(sol.resistant),
             "handled by the functional-characterisation fallback");

    // The 6N+13 conditions: for solved states through their Bethe roots, and
    // for every exact record as the fallback certification.
    OpenTQ tq(c.chain, c.boundary, c.lambda2_reading);
    double worst_state_conditions = 0;
    for (size_t i = 0; i < sol.states.size(); ++i) {
        const BetheState& s = sol.states[i].state;
        std::vector<Cplx> poles = s.r1;
        for (const Cplx& x : s.r3) poles.push_back(x);
        auto f1 = [&](Cplx u) { return tq.lambda1(u, s); };
        auto f2 = [&](Cplx u) { return tq.lambda2(u, s); };
        PolynomialCertificate c1 = certify_polynomial(f1, 2 * c.chain.N + 4, poles, 3.0);
        PolynomialCertificate c2 = certify_polynomial(f2, 2 * c.chain.N + 4, poles, 3.0);
        auto conds = tq.condition_residuals(sol.lambdas[i], c1.poly, c2.poly, s.sector_k);
        worst_state_conditions = std::max(worst_state_conditions, vecmax(conds));
    }
    if (!sol.states.empty())
        rep.add("eigenident3-states", "6N+13 conditions for solved Bethe states",
                worst_state_conditions, 1e-7);
    const std::vector<Cplx> ulev = u_hat_levels(c.chain.N, c.boundary);
    double worst_rec = 0;
    for (const SpectrumRecord& r : spec.records) {
        int sector = 0;
        double best = 1e18;
        for (size_t l = 0; l < ulev.size(); ++l)
            if (std::abs(r.u_hat - ulev[l]) < best) {
                best = std::abs(r.u_hat - ulev[l]);
                sector = static_cast<int>(l);
            }
        auto conds = tq.condition_residuals(r.values[0], r.values[1], r.values[2], sector);
        worst_rec = std::max(worst_rec, vecmax(conds));
    }
    rep.add("eigenident3-records", "6N+13 conditions for every exact eigenvalue triple",
            worst_rec, 1e-7);

    if (with_match) {
        MatchReport mr = match_spectrum(spec.records, sol.lambdas, 1e-5, default_match_grid());
        rep.info("match-coverage", "exact records matched by solved Bethe states",
                 double(mr.matched),
                 std::to_string(mr.unmatched) + " unmatched, worst deviation " +
                     std::to_string(mr.worst_matched_deviation));
    }
}

// ---------------------------------------------------------------------------
// audit-typos
// ---------------------------------------------------------------------------
void run_audit(const Campaign& c, Report& rep) {
    Rng rng = Rng(c.seed);
    const Cplx eta = c.chain.eta;

    // (i) second printed periodic Bethe equation is degenerate.
    {
        Rng r = rng.fork(31);
        BetheState s;
        s.r1 = {r.box(1.0), r.box(1.0)};
        s.r2 = {r.box(1.0)};
        s.r3 = {r.box(1.0), r.box(1.0)};
        PeriodicTQ tq(c.chain);
        // Printed right-hand side Q3(l)/Q3(l) for random arguments.
        double printed_rhs_dev = 0;
        double derived_rhs_dev = 1e18;
        for (int i = 0; i < 20; ++i) {
            const Cplx la = r.box(1.2);
            const Cplx q3 = tq.q(3, la, s);
            printed_rhs_dev = std::max(printed_rhs_dev, std::abs(q3 / q3 - Cplx{1, 0}));
            const Cplx derived = tq.q(3, la + eta, s) / q3;
            derived_rhs_dev = std::min(derived_rhs_dev, std::abs(derived - Cplx{1, 0}));
        }
        rep.add("BAE-period-3-printed", "printed second family right side is identically one",
                printed_rhs_dev, 1e-13, "tautology over 20 samples");
        rep.add("BAE-period-3-derived",
                "residue-derived right side is a genuine shifted ratio",
                derived_rhs_dev > 1e-3 ? 0.0 : 1.0, 0.5,
                "min |Q3(l+eta)/Q3(l) - 1| over samples: " + std::to_string(derived_rhs_dev));
        // A root satisfying the residue-derived family violates the printed one.
        auto fres = [&](const std::vector<Cplx>& x) {
            BetheState t = s;
            t.r2 = {x[0]};
            std::vector<Cplx> all = tq.bae_residuals(t);
            return std::vector<Cplx>{all[s.r1.size()]};
        };
        std::vector<Cplx> x{r.box(0.7)};
        SolverOptions o;
        const double fn = damped_newton(fres, x, o);
        BetheState t = s;
        t.r2 = {x[0]};
        const auto printed = tq.printed_bae_residuals(t);
        const double printed_at_root = std::abs(printed[s.r1.size()]);
        rep.add("BAE-period-3-witness",
                "residue-consistent root found and evaluated in the printed form",
                fn, 1e-9,
                "printed-form residual at that root: " + std::to_string(printed_at_root));
    }

    // (ii) second fused eigenvalue reading, root-free evidence: asymptotic
    // scalar of t2 distinguishes the two parenthesisations.
    {
        FusedRFamily f = build_fused_family(eta);
        FusedKFamily k = build_fused_k(f, c.boundary);
        OpenTransferFamily fam = build_open_family(f, k, c.chain);
        OpenAsymptotics a = check_open_asymptotics(fam);
        rep.add("openasym3-t2-symmetric", "t2 leading coefficient, symmetric reading",
                a.t2_leading_symmetric, 1e-9);
        rep.info("openasym3-t2-printed", "t2 leading coefficient, verbatim parenthesisation",
                 a.t2_leading_printed, "large residual demonstrates the misprint");
    }

    // (iii) second fused eigenvalue reading in the inhomogeneous relations:
    // for a solved state, only one reading yields a pole-free polynomial that
    // satisfies the third functional family.
    {
        FusedRFamily f = build_fused_family(eta);
        FusedKFamily k = build_fused_k(f, c.boundary);
        OpenTransferFamily fam = build_open_family(f, k, c.chain);
        const GradedOperator uh = u_hat_operator(c.chain.N, c.boundary);
        const GradedOperator qh = q_hat_operator(c.chain.N, c.boundary);
        SpectrumResult spec = exact_spectrum({&fam.t, &fam.t1, &fam.t2}, {&uh.mat, &qh.mat});
        OpenSolveOutput sol = solve_open_states(c.chain, c.boundary, c.branch, 3, spec,
                                                rng.fork(32));
        if (sol.states.empty()) {
            rep.info("eigen3-reading", "no solved state available for the reading audit", 1.0,
                     "functional fallback only");
        } else {
            const BetheState& s = sol.states.front().state;
            const int rec = sol.record_of.front();
            OpenTQ tq3(c.chain, c.boundary, 3), tq2(c.chain, c.boundary, 2);
            std::vector<Cplx> poles = s.r1;
            for (const Cplx& x : s.r3) poles.push_back(x);
            auto g3 = [&](Cplx u) { return tq3.lambda2(u, s); };
            auto g2 = [&](Cplx u) { return tq2.lambda2(u, s); };
            PolynomialCertificate c3 = certify_polynomial(g3, 2 * c.chain.N + 4, poles, 3.0);
            PolynomialCertificate c2 = certify_polynomial(g2, 2 * c.chain.N + 4, poles, 3.0);
            const Poly& exact = spec.records[rec].values[2];
            const double dev3 = (c3.poly - exact).norm() / std::max(1.0, exact.norm());
            const double dev2 = (c2.poly - exact).norm() / std::max(1.0, exact.norm());
            rep.add("eigen3-reading-symmetric",
                    "second fused eigenvalue from roots, symmetric z-index reading vs exact",
                    dev3, 1e-6);
            rep.info("eigen3-reading-printed",
                     "second fused eigenvalue from roots, verbatim z-index reading vs exact",
                     dev2, "large deviation demonstrates the misprint");
        }
    }
}

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

bool Campaign::from_json_text(const std::string& text, Campaign* out, std::string* err) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        *err = "config: not valid JSON";
        return false;
    }
    Campaign c;
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) {
            *err = "config.mode: expected string";
            return false;
        }
        c.mode = j["mode"].get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            *err = "config.seed: expected unsigned integer";
            return false;
        }
        c.seed = j["seed"].get<std::uint64_t>();
        c.has_seed = true;
    }
    if (j.contains("chain")) {
        const Json& ch = j["chain"];
        if (!ch.contains("N") || !ch["N"].is_number_integer()) {
            *err = "config.chain.N: expected integer";
            return false;
        }
        const int n = ch["N"].get<int>();
        Cplx eta{0.5, 0};
        if (ch.contains("eta") && !parse_complex(ch["eta"], &eta)) {
            *err = "config.chain.eta: expected number or [re, im]";
            return false;
        }
        std::vector<Cplx> thetas;
        if (ch.contains("thetas")) {
            for (const Json& th : ch["thetas"]) {
                Cplx v;
                if (!parse_complex(th, &v)) {
                    *err = "config.chain.thetas: expected numbers or [re, im] pairs";
                    return false;
                }
                thetas.push_back(v);
            }
        }
        if (static_cast<int>(thetas.size()) != n) {
            *err = "config.chain.thetas: need exactly N entries";
            return false;
        }
        try {
            c.chain = ChainConfig(n, eta, thetas);
        } catch (const std::exception& e) {
            *err = std::string("config.chain: ") + e.what();
            return false;
        }
    }
    if (j.contains("boundary")) {
        const Json& b = j["boundary"];
        if (b.is_null()) {
            c.has_boundary = false;
        } else {
            Cplx xi, xit;
            std::array<Cplx, 4> cc{}, ct{};
            if (!b.contains("xi") || !parse_complex(b["xi"], &xi) || !b.contains("xi_tilde") ||
                !parse_complex(b["xi_tilde"], &xit)) {
                *err = "config.boundary: xi and xi_tilde required";
                return false;
            }
            auto parse4 = [&](const char* key, std::array<Cplx, 4>* dst) {
                if (!b.contains(key) || !b[key].is_array() || b[key].size() != 4) return false;
                for (int i = 0; i < 4; ++i)
                    if (!parse_complex(b[key][i], &(*dst)[i])) return false;
                return true;
            };
            if (!parse4("c", &cc) || !parse4("c_tilde", &ct)) {
                *err = "config.boundary: c and c_tilde must be arrays of four entries";
                return false;
            }
            BoundaryConfig probe = BoundaryConfig::unchecked(xi, xit, cc, ct);
            if (probe.constraint_violation() > 1e-12) {
                *err = "config.boundary: integrability constraint c1*c2 == c3*c4 violated "
                       "(violation " + std::to_string(probe.constraint_violation()) + ")";
                return false;
            }
            c.boundary = probe;
            c.has_boundary = true;
        }
    }
    if (j.contains("tolerances") && j["tolerances"].contains("scale")) {
        c.tolerance_scale = j["tolerances"]["scale"].get<double>();
        if (!(c.tolerance_scale > 0)) {
            *err = "config.tolerances.scale: must be positive";
            return false;
        }
    }
    if (j.contains("branch")) {
        c.branch = j["branch"].get<std::string>();
        if (c.branch != "plus" && c.branch != "minus" && c.branch != "both") {
            *err = "config.branch: expected plus, minus or both";
            return false;
        }
    }
    if (j.contains("lambda2_reading")) {
        c.lambda2_reading = j["lambda2_reading"].get<int>();
        if (c.lambda2_reading != 2 && c.lambda2_reading != 3) {
            *err = "config.lambda2_reading: expected 2 or 3";
            return false;
        }
    }
    if (j.contains("output")) c.out_dir = j["output"].get<std::string>();
    *out = c;
    return true;
}

bool Campaign::from_json_file(const std::string& path, Campaign* out, std::string* err) {
    std::ifstream in(path);
    if (!in) {
        *err = "config: cannot open " + path;
        return false;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), out, err);
}

CampaignResult run_campaign(const Campaign& c) {
    CampaignResult result;
    if (!c.has_seed) {
        result.exit_code = 2;
        result.error = "seed: required (all randomness derives from it)";
        return result;
    }
    Report rep{result.rows, c.tolerance_scale};
    try {
        if (c.mode == "verify-periodic") {
            run_verify_periodic(c, rep);
        } else if (c.mode == "verify-open") {
            if (!c.has_boundary) {
                result.exit_code = 2;
                result.error = "boundary: required for verify-open";
                return result;
            }
            run_verify_open(c, rep);
        } else if (c.mode == "spectrum") {
            run_spectrum(c, rep);
        } else if (c.mode == "solve-bae") {
            run_solve(c, rep, /*with_match=*/false);
        } else if (c.mode == "match") {
            run_solve(c, rep, /*with_match=*/true);
        } else if (c.mode == "audit-typos") {
            if (!c.has_boundary) {
                result.exit_code = 2;
                result.error = "boundary: required for audit-typos";
                return result;
            }
            run_audit(c, rep);
        } else {
            result.exit_code = 2;
            result.error = "mode: expected one of verify-periodic, verify-open, spectrum, "
                           "solve-bae, match, audit-typos";
            return result;
        }
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.error = e.what();
        return result;
    }

    bool all_pass = true;
    for (const CheckRow& r : result.rows) all_pass &= r.pass;
    result.exit_code = all_pass ? 0 : 1;

    Json meta;
    meta["mode"] = c.mode;
    meta["seed"] = c.seed;
    meta["N"] = c.chain.N;
    meta["eta"] = dump_complex(c.chain.eta);
    Json thetas = Json::array();
    for (const Cplx& th : c.chain.thetas) thetas.push_back(dump_complex(th));
    meta["thetas"] = thetas;
    if (c.has_boundary) {
        Json b;
        b["xi"] = dump_complex(c.boundary.xi);
        b["xi_tilde"] = dump_complex(c.boundary.xi_tilde);
        Json cc = Json::array(), ct = Json::array();
        for (int i = 0; i < 4; ++i) {
            cc.push_back(dump_complex(c.boundary.c[i]));
            ct.push_back(dump_complex(c.boundary.ct[i]));
        }
        b["c"] = cc;
        b["c_tilde"] = ct;
        meta["boundary"] = b;
    }
    meta["branch"] = c.branch;
    meta["timestamp"] = iso_now();

    Json rows = Json::array();
    for (const CheckRow& r : result.rows) {
        Json row;
        row["id"] = r.id;
        row["description"] = r.description;
        row["residual"] = r.residual;
        row["threshold"] = r.threshold;
        row["pass"] = r.pass;
        if (!r.note.empty()) row["note"] = r.note;
        rows.push_back(row);
    }
    Json doc;
    doc["meta"] = meta;
    doc["rows"] = rows;
    result.report_json = doc.dump(2) + "\n";

    std::ostringstream csv;
    csv << "id,residual,threshold,pass,description\n";
    for (const CheckRow& r : result.rows) {
        csv << r.id << ',' << std::scientific << r.residual << ',' << r.threshold << ','
            << (r.pass ? "pass" : "FAIL") << ",\"" << r.description << "\"\n";
    }
    result.report_csv = csv.str();
    return result;
}

bool write_reports(const CampaignResult& r, const std::string& out_dir, std::string* err) {
    namespace fs = std::filesystem;
    try {
        fs::create_directories(out_dir);
        std::ofstream js(fs::path(out_dir) / "report.json");
        js << r.report_json;
        std::ofstream cs(fs::path(out_dir) / "report.csv");
        cs << r.report_csv;
        return js.good() && cs.good();
    } catch (const std::exception& e) {
        if (err) *err = e.what();
        return false;
    }
}

}  // namespace su22
