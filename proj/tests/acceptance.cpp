// Acceptance suite: one check per numbered criterion, each printing a single
// [PASS]/[FAIL] line. Run with no arguments for all criteria or pass a list
// of numbers. Criterion 11 is informational at these reduced sizes: its
// ordering outcome is reported but never fails the run.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gaa/agp.hpp"
#include "gaa/model.hpp"
#include "gaa/rstat.hpp"
#include "gaa/scaling.hpp"
#include "gaa/sff.hpp"
#include "gaa/spectra.hpp"
#include "gaa/surrogates.hpp"

using namespace gaa;

namespace {

constexpr double kIprLocalizedThreshold = 0.02;  // one-particle localization call

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---- 1: sector dimensions -------------------------------------------------
Outcome criterion_1() {
    const std::vector<Eigen::Index> want = {924, 1716, 3432, 6435, 12870, 24310, 48620};
    std::string detail;
    bool ok = true;
    for (int L = 12; L <= 18; ++L) {
        const Eigen::Index dim = enumerate_basis(L, half_filling(L)).size();
        ok = ok && dim == want[static_cast<std::size_t>(L - 12)];
        detail += (L > 12 ? "," : "") + std::to_string(dim);
    }
    return {ok, "dims " + detail};
}

// ---- 2: reference level statistics ----------------------------------------
Outcome criterion_2() {
    std::mt19937_64 rng(20250201);
    std::vector<Eigen::VectorXd> goe;
    for (int k = 0; k < 50; ++k)
        goe.push_back(full_diagonalize(goe_matrix(200, rng), false).eigenvalues);
    const double r_goe = mean_gap_ratio(goe).mean_r;

    std::vector<Eigen::VectorXd> poisson;
    for (int k = 0; k < 50; ++k) poisson.push_back(poisson_levels(2000, rng));
    const double r_poisson = mean_gap_ratio(poisson).mean_r;

    const bool ok = std::abs(r_goe - kGapRatioGOE) <= 0.02 &&
                    std::abs(r_poisson - kGapRatioPoisson) <= 0.01;
    return {ok, "<r>_GOE=" + fmt(r_goe) + " (0.53 +- 0.02), <r>_Poisson=" + fmt(r_poisson) +
                    " (0.39 +- 0.01)"};
}

// ---- 3: chain gap-ratio contrast and crossing bracket ----------------------
Outcome criterion_3() {
    ModelParams base;
    base.L = 12;
    base.N = 6;
    base.V = 1.0;
    base.alpha = 0.0;
    EnsembleConfig ens;
    ens.n_realizations = 200;
    ens.master_seed = 0xACCE0003ULL;
    const EnergyWindow window;

    auto r_at = [&](double lambda, std::uint64_t point) {
        ModelParams p = base;
        p.lambda = lambda;
        EnsembleConfig e = ens;
        e.master_seed = derive_seed(ens.master_seed, point);
        return gaa_gap_ratio_point(p, e, window).mean_r;
    };
    const double r_ergodic = r_at(0.65, 0);
    const double r_localized = r_at(10.15, 1);
    const double r_lo = r_at(1.0, 2);
    const double r_hi = r_at(2.5, 3);

    const bool ok = r_ergodic >= 0.50 && r_localized <= 0.42 && r_lo > 0.45 && r_hi < 0.45;
    return {ok, "<r>(0.65)=" + fmt(r_ergodic) + " >=0.50, <r>(10.15)=" + fmt(r_localized) +
                    " <=0.42, crossing bracket <r>(1.0)=" + fmt(r_lo) + " > 0.45 > <r>(2.5)=" +
                    fmt(r_hi)};
}

// ---- 4: self-duality of the one-particle chain -----------------------------
Outcome criterion_4() {
    ModelParams p;
    p.L = 610;
    p.N = 1;
    p.alpha = 0.0;
    p.phi = 0.123;

    auto median_ipr = [&](double lambda) {
        ModelParams q = p;
        q.lambda = lambda;
        Eigen::VectorXd ipr = single_particle_ipr(q).ipr;
        std::sort(ipr.data(), ipr.data() + ipr.size());
        return ipr(ipr.size() / 2);
    };
    const double extended = median_ipr(0.5);
    const double localized = median_ipr(1.5);
    const bool ok = extended < 3.0 / p.L && localized > 0.1;
    return {ok, "median IPR(lambda=0.5)=" + fmt(extended) + " < " + fmt(3.0 / p.L) +
                    ", median IPR(lambda=1.5)=" + fmt(localized) + " > 0.1"};
}

// ---- 5: mobility edge ------------------------------------------------------
Outcome criterion_5() {
    ModelParams p;
    p.L = 987;
    p.N = 1;
    p.alpha = 0.5;
    p.lambda = 0.6;
    p.phi = 0.456;
    const double edge = mobility_edge_energy(p);
    const SingleParticleIpr res = single_particle_ipr(p);
    long agree = 0;
    for (Eigen::Index n = 0; n < res.energies.size(); ++n) {
        const bool predicted = res.energies(n) > edge;  // localized side
        const bool observed = res.ipr(n) > kIprLocalizedThreshold;
        if (predicted == observed) ++agree;
    }
    const double frac = static_cast<double>(agree) / static_cast<double>(res.energies.size());
    return {frac >= 0.90, "classification agreement " + fmt(100.0 * frac) + "% (need >= 90%), edge E_c=" +
                              fmt(edge)};
}

// ---- 6: form-factor baselines ----------------------------------------------
Outcome criterion_6() {
    std::mt19937_64 rng(20250206);
    SFFConfig cfg;
    std::vector<Eigen::VectorXd> goe;
    for (int k = 0; k < 200; ++k)
        goe.push_back(unfold(full_diagonalize(goe_matrix(500, rng), false).eigenvalues,
                             cfg.unfold_degree));
    const SFFCurve curve = compute_sff(goe, cfg.eta, cfg.tau_grid);

    // Smoothed log10 K/K_GOE on the ramp, exactly as the Thouless criterion
    // evaluates it: signed average over the window, magnitude thresholded.
    Eigen::VectorXd ratio(curve.tau.size());
    for (Eigen::Index k = 0; k < curve.tau.size(); ++k)
        ratio(k) = std::log10(curve.K(k) / goe_sff(curve.tau(k)));
    double worst = 0.0;
    for (Eigen::Index k = 0; k < curve.tau.size(); ++k) {
        if (curve.tau(k) < 0.1 || curve.tau(k) > 1.0) continue;
        const Eigen::Index lo = std::max<Eigen::Index>(0, k - cfg.smoothing_window / 2);
        const Eigen::Index hi =
            std::min<Eigen::Index>(curve.tau.size() - 1, lo + cfg.smoothing_window - 1);
        worst = std::max(worst, std::abs(ratio.segment(lo, hi - lo + 1).mean()));
    }

    std::vector<Eigen::VectorXd> poisson;
    for (int k = 0; k < 500; ++k) poisson.push_back(poisson_levels(1000, rng));
    const SFFCurve flat = compute_sff(poisson, cfg.eta, cfg.tau_grid);
    const ThoulessResult th = extract_thouless(flat, cfg.epsilon, cfg.smoothing_window);
    const double poisson_tau = th.tau_th.value_or(flat.tau(flat.tau.size() - 1));

    const bool ok = worst <= 0.05 && poisson_tau >= 1.0;
    return {ok, "GOE max smoothed |log10 K/K_GOE| on [0.1,1] = " + fmt(worst) +
                    " (<= 0.05), Poisson tau_Th=" + fmt(poisson_tau) + " (>= 1)"};
}

// ---- 7: Thouless-time phenomenology ----------------------------------------
Outcome criterion_7() {
    ModelParams base;
    base.L = 12;
    base.N = 6;
    base.V = 1.0;
    base.lambda = 0.65;
    EnsembleConfig ens;
    ens.n_realizations = 500;
    ens.master_seed = 0xACCE0007ULL;
    SFFConfig cfg;

    const auto rows = thouless_vs_alpha(base, {0.0, 0.3, 0.7}, ens, cfg);
    auto value_of = [&](const ThoulessScanRow& row) {
        return row.tau_th.value_or(std::numeric_limits<double>::infinity());
    };
    const double t0 = value_of(rows[0]), t3 = value_of(rows[1]), t7 = value_of(rows[2]);

    ModelParams localized = base;
    localized.lambda = 10.15;
    EnsembleConfig loc_ens = ens;
    loc_ens.master_seed = derive_seed(ens.master_seed, 99);
    const SFFCurve curve = gaa_sff_curve(localized, loc_ens, cfg);
    const double t_loc = curve.tau_thouless.value_or(std::numeric_limits<double>::infinity());

    // Thermalization sets in earlier for larger sizes.
    ModelParams small = base;
    small.L = 10;
    small.N = 5;
    EnsembleConfig small_ens = ens;
    small_ens.master_seed = derive_seed(ens.master_seed, 98);
    const SFFCurve small_curve = gaa_sff_curve(small, small_ens, cfg);
    const double t_small =
        small_curve.tau_thouless.value_or(std::numeric_limits<double>::infinity());

    const bool ok = t0 < 0.5 && t_loc > 1.0 && t0 < t3 && t3 < t7 && t_small > t0;
    std::string detail = "tau_Th(alpha=0)=" + fmt(t0) + " (<0.5), tau_Th(10.15)=" +
                         (std::isinf(t_loc) ? std::string("sentinel") : fmt(t_loc)) +
                         " (>1), alpha-grid " + fmt(t0) + " < " + fmt(t3) + " < " + fmt(t7) +
                         ", size trend tau_Th(L=10)=" + fmt(t_small) + " > tau_Th(L=12)";
    return {ok, detail};
}

// ---- 8: fidelity-susceptibility oracles -------------------------------------
Outcome criterion_8() {
    bool ok = true;
    std::string detail;

    // Two-level analytic case, exact to 1e-10.
    {
        const double delta = 1.3, angle = 0.41;
        Eigen::MatrixXd u(2, 2);
        u << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
        Eigen::MatrixXd h = u * Eigen::Vector2d(0.0, delta).asDiagonal() * u.transpose();
        h = 0.5 * (h + h.transpose().eval());
        SpectrumResult s = full_diagonalize(h, true);
        s.params.L = 2;
        const Eigen::VectorXd d = Eigen::Vector2d(1.0, -0.2);
        const ChiResult r = fidelity_susceptibility(s, d, IndexRange{0, 2}, 0.0);
        const double gap = s.eigenvalues(1) - s.eigenvalues(0);
        const double v = s.eigenvectors.col(0).dot(d.asDiagonal() * s.eigenvectors.col(1));
        const double want = v * v / (gap * gap);
        const double err = std::max(std::abs(r.chi(0) - want), std::abs(r.chi(1) - want));
        ok = ok && err <= 1e-10;
        detail += "two-level err=" + fmt(err);
    }

    // Finite-difference overlap oracle on an L = 8 instance.
    {
        ModelParams p;
        p.L = 8;
        p.N = 4;
        p.lambda = 0.65;
        p.V = 1.0;
        p.phi = 0.83;
        const FockBasis basis = enumerate_basis(p.L, p.N);
        const Eigen::VectorXd d = build_perturbation(PerturbationKind::ExtensiveNN, p, basis);
        const Eigen::MatrixXd h0 = build_hamiltonian(p, basis);
        SpectrumResult s0 = full_diagonalize(h0, true);
        s0.params = p;
        const double beta = 1e-5;
        const SpectrumResult s1 =
            full_diagonalize(h0 + beta * Eigen::MatrixXd(d.asDiagonal()), true);
        const IndexRange w = select_window(s0, EnergyWindow{-0.1, 0.1});
        const ChiResult r = fidelity_susceptibility(s0, d, w);
        const double width = s0.eigenvalues(s0.dim() - 1) - s0.eigenvalues(0);
        double worst = 0.0;
        int used = 0;
        for (Eigen::Index n = w.first; n < w.last; ++n) {
            const double gap_below = n > 0 ? s0.eigenvalues(n) - s0.eigenvalues(n - 1) : width;
            const double gap_above =
                n + 1 < s0.dim() ? s0.eigenvalues(n + 1) - s0.eigenvalues(n) : width;
            if (std::min(gap_below, gap_above) < 1e-4 * width) continue;
            const double overlap = std::abs(s0.eigenvectors.col(n).dot(s1.eigenvectors.col(n)));
            const double fd = (1.0 - overlap * overlap) / (beta * beta);
            const double lib = r.chi(n - w.first);
            if (lib <= 0.0) continue;
            worst = std::max(worst, std::abs(fd - lib) / lib);
            ++used;
        }
        ok = ok && used > 5 && worst <= 1e-3;
        detail += ", fd-oracle rel err=" + fmt(worst) + " over " + std::to_string(used) +
                  " states";
    }

    // Quadratic perturbation scaling and inverse-square energy scaling.
    {
        ModelParams p;
        p.L = 6;
        p.N = 3;
        p.lambda = 1.1;
        p.alpha = 0.2;
        p.phi = 0.5;
        const FockBasis basis = enumerate_basis(p.L, p.N);
        const Eigen::VectorXd d = build_perturbation(PerturbationKind::LocalDensity, p, basis);
        SpectrumResult s = full_diagonalize(build_hamiltonian(p, basis), true);
        s.params = p;
        const IndexRange w{0, s.dim()};
        const ChiResult base = fidelity_susceptibility(s, d, w, 0.0);
        SpectrumResult scaled = s;
        scaled.eigenvalues *= 2.0;
        const ChiResult half = fidelity_susceptibility(scaled, d, w, 0.0);
        const ChiResult amp = fidelity_susceptibility(s, (3.0 * d.array()).matrix(), w, 0.0);
        double worst = 0.0;
        for (Eigen::Index i = 0; i < base.chi.size(); ++i) {
            if (base.chi(i) <= 0.0) continue;
            worst = std::max(worst, std::abs(half.chi(i) - base.chi(i) / 4.0) / base.chi(i));
            worst = std::max(worst, std::abs(amp.chi(i) - 9.0 * base.chi(i)) / base.chi(i));
        }
        ok = ok && worst <= 1e-10;
        detail += ", scaling invariants err=" + fmt(worst);
    }
    return {ok, detail};
}

// ---- 9: ergodic zeta scaling and the susceptibility peak --------------------
Outcome criterion_9() {
    const EnergyWindow window;
    constexpr double ln2 = 0.6931471805599453;

    // Slope of zeta versus L at a fixed ergodic point, at statistics high
    // enough (sigma ~ 0.015) that the result reflects the model, not the seed.
    const std::vector<int> sizes = {8, 10, 12};
    const std::vector<int> samples = {400, 200, 100};
    Eigen::VectorXd zetas(3);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        ModelParams p;
        p.L = sizes[i];
        p.N = half_filling(p.L);
        p.lambda = 0.65;
        p.V = 1.0;
        EnsembleConfig ens;
        ens.n_realizations = samples[i];
        ens.master_seed = derive_seed(0xACCE0009ULL, i);
        zetas(static_cast<Eigen::Index>(i)) =
            gaa_chi_point(p, PerturbationKind::ExtensiveNN, ens, window).zeta;
    }
    const ErgodicScalingFit fit = ergodic_scaling_fit(sizes, zetas);
    const bool slope_ok = std::abs(fit.slope - ln2) <= 0.3 * ln2;

    // Susceptibility peak at L = 12 for each alpha. At this size the peak
    // sits near lambda ~ 0.5..1.1 (it drifts upward with L), so the grid is
    // fine there and coarse in the tail. The peak position is the vertex of
    // a parabola through the three points around the grid argmax of zeta.
    const std::vector<double> lambdas = {0.2, 0.35, 0.5,  0.65, 0.8, 0.95, 1.1,
                                         1.25, 1.4,  1.7, 2.2,  3.0, 4.0,  5.0};
    std::vector<double> peak_pos;
    bool peaks_ok = true;
    std::string peak_detail;
    for (double alpha : {0.0, 0.3, 0.7}) {
        ModelParams p;
        p.L = 12;
        p.N = 6;
        p.V = 1.0;
        p.alpha = alpha;
        EnsembleConfig ens;
        ens.n_realizations = 20;
        ens.master_seed = derive_seed(0xACCE0019ULL, static_cast<std::uint64_t>(alpha * 10));
        const auto rows =
            chi_lambda_sweep(p, lambdas, PerturbationKind::ExtensiveNN, ens, window);
        std::size_t arg = 0;
        for (std::size_t k = 1; k < rows.size(); ++k)
            if (rows[k].f_scaled > rows[arg].f_scaled) arg = k;
        const bool interior = arg > 0 && arg + 1 < rows.size() &&
                              rows[arg].f_scaled > rows.front().f_scaled &&
                              rows[arg].f_scaled > rows.back().f_scaled;
        peaks_ok = peaks_ok && interior;
        double vertex = rows[arg].lambda;
        if (interior) {
            const double x0 = rows[arg - 1].lambda, x1 = rows[arg].lambda,
                         x2 = rows[arg + 1].lambda;
            const double y0 = rows[arg - 1].zeta, y1 = rows[arg].zeta, y2 = rows[arg + 1].zeta;
            const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
            const double a =
                (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
            const double b =
                (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
            if (a < 0.0) vertex = -b / (2.0 * a);
        }
        peak_pos.push_back(vertex);
        peak_detail += " peak(alpha=" + fmt(alpha) + ")=" + fmt(vertex);
    }
    const bool order_ok = peak_pos[0] > peak_pos[1] && peak_pos[1] > peak_pos[2];

    const bool ok = slope_ok && peaks_ok && order_ok;
    return {ok, "zeta slope=" + fmt(fit.slope) + " vs ln2=" + fmt(ln2) +
                    (slope_ok ? " (within 30%)," : " (OUTSIDE 30%),") + peak_detail +
                    (order_ok ? " decreasing" : " NOT decreasing")};
}

// ---- 10: collapse machinery --------------------------------------------------
Outcome criterion_10() {
    std::vector<CollapsePoint> points;
    const AnsatzParams truth{0.5, 1.5, 0.0};
    for (int L : {8, 10, 12, 14}) {
        for (int j = 0; j < 60; ++j) {
            const double lambda = 0.5 + 2.0 * j / 59.0;
            const double th =
                theta(lambda, L, CorrelationKind::PowerLaw, DriftKind::Const, truth);
            points.push_back({L, lambda, std::tanh(th)});
        }
    }
    AnsatzSpec spec;
    spec.correlation = CorrelationKind::PowerLaw;
    spec.drift = DriftKind::Const;
    DEConfig cfg;
    cfg.seed = 0xACCE000AULL;
    const CollapseResult res = collapse(points, spec, cfg);
    const bool recover_ok = res.cost <= 0.05 && std::abs(res.best.nu - 0.5) <= 0.05 &&
                            std::abs(res.best.lambda0 - 1.5) <= 0.05;

    // Perfectly monotone data costs exactly zero.
    std::vector<CollapsePoint> monotone;
    for (int j = 0; j < 50; ++j) monotone.push_back({10, 0.3 + 0.05 * j, std::tanh(0.2 * j - 4.0)});
    const double c_monotone =
        cost_function(monotone, CorrelationKind::PowerLaw, DriftKind::Const, truth);

    // Affine rescaling of the observable leaves the cost unchanged to 1e-12.
    std::vector<CollapsePoint> rescaled = points;
    for (auto& q : rescaled) q.value = -2.5 * q.value + 0.75;
    const double c_base =
        cost_function(points, CorrelationKind::PowerLaw, DriftKind::Const, AnsatzParams{0.8, 1.2, 0.0});
    const double c_rescaled = cost_function(rescaled, CorrelationKind::PowerLaw, DriftKind::Const,
                                            AnsatzParams{0.8, 1.2, 0.0});
    const bool invariant_ok = std::abs(c_base - c_rescaled) <= 1e-12;

    const bool ok = recover_ok && c_monotone == 0.0 && invariant_ok;
    return {ok, "nu=" + fmt(res.best.nu) + " (true 0.5 +-10%), lambda0=" + fmt(res.best.lambda0) +
                    " (true 1.5 +-0.05), C=" + fmt(res.cost) + " (<=0.05), monotone C=" +
                    fmt(c_monotone) + ", affine |dC|=" + fmt(std::abs(c_base - c_rescaled))};
}

// ---- 11: ansatz ordering at reduced sizes (informational) --------------------
Outcome criterion_11() {
    const std::vector<int> sizes = {10, 12, 14};
    const std::vector<int> samples = {120, 48, 8};
    std::vector<double> lambdas;
    for (int j = 0; j < 16; ++j) lambdas.push_back(1.0 + 2.0 * j / 15.0);

    std::vector<CollapsePoint> points;
    const EnergyWindow window;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        ModelParams p;
        p.L = sizes[i];
        p.N = half_filling(p.L);
        p.V = 1.0;
        p.alpha = 0.0;
        EnsembleConfig ens;
        ens.n_realizations = samples[i];
        ens.master_seed = derive_seed(0xACCE000BULL, i);
        const auto table = phase_diagram_scan(p, {0.0}, lambdas, ens, window);
        for (const auto& row : table)
            points.push_back({p.L, row.lambda, row.stats.mean_r});
    }

    DEConfig cfg;
    cfg.seed = 0xACCE001BULL;
    AnsatzSpec bkt_linear;
    bkt_linear.correlation = CorrelationKind::BKT;
    bkt_linear.drift = DriftKind::LinearL;
    AnsatzSpec power_const;
    power_const.correlation = CorrelationKind::PowerLaw;
    power_const.drift = DriftKind::Const;
    const CollapseResult c_bkt = collapse(points, bkt_linear, cfg);
    const CollapseResult c_pow = collapse(points, power_const, cfg);

    const bool ordered = c_bkt.cost < c_pow.cost;
    return {true, "C(BKT,linear)=" + fmt(c_bkt.cost) + (ordered ? " < " : " >= ") +
                      "C(power,const)=" + fmt(c_pow.cost) +
                      (ordered ? " (matches the full-size ordering)"
                               : " (informational only at reduced sizes)")};
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int a = 1; a < argc; ++a) wanted.push_back(std::atoi(argv[a]));
    if (wanted.empty())
        for (int k = 1; k <= 11; ++k) wanted.push_back(k);

    const std::function<Outcome()> criteria[] = {
        criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5,  criterion_6,
        criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
    };
    const char* names[] = {
        "sector dimensions 924..48620",
        "GOE/Poisson gap-ratio references",
        "chain gap-ratio contrast and crossing bracket (L=12, 200 samples)",
        "one-particle self-duality at lambda* = t",
        "mobility-edge classification agreement",
        "form-factor GOE/Poisson baselines",
        "Thouless-time phenomenology (L=12, 500 samples)",
        "fidelity-susceptibility oracles",
        "ergodic zeta scaling and susceptibility peak",
        "collapse machinery on synthetic scaling data",
        "ansatz ordering at reduced sizes (informational)",
    };

    int failures = 0;
    for (int k : wanted) {
        if (k < 1 || k > 11) {
            std::fprintf(stderr, "unknown criterion %d\n", k);
            return 2;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[k - 1]();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s -- %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL", k,
                    names[k - 1], outcome.detail.c_str(), elapsed);
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
