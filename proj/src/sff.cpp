#include "gaa/sff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gaa/parallel.hpp"

namespace gaa {

Eigen::VectorXd log_tau_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) throw std::invalid_argument("log_tau_grid: bad range");
    Eigen::VectorXd grid =
        Eigen::VectorXd::LinSpaced(n, std::log10(lo), std::log10(hi));
    for (Eigen::Index i = 0; i < grid.size(); ++i) grid(i) = std::pow(10.0, grid(i));
    return grid;
}

Eigen::VectorXd gaussian_filter_weights(const Eigen::Ref<const Eigen::VectorXd>& unfolded,
                                        double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("gaussian_filter_weights: eta must be > 0");
    const Eigen::Index n = unfolded.size();
    if (n == 0) throw std::invalid_argument("gaussian_filter_weights: empty spectrum");
    if (n == 1) return Eigen::VectorXd::Ones(1);  // the lone level sits at the mean
    const double mean = unfolded.mean();
    const double var = (unfolded.array() - mean).square().sum() / static_cast<double>(n);
    if (!(var > 0.0)) throw std::runtime_error("gaussian_filter_weights: zero-variance spectrum");
    const double denom = 2.0 * eta * eta * var;
    return (-(unfolded.array() - mean).square() / denom).exp();
}

SFFCurve compute_sff(const std::vector<Eigen::VectorXd>& unfolded_ensemble, double eta,
                     const Eigen::Ref<const Eigen::VectorXd>& tau_grid, int threads) {
    if (unfolded_ensemble.empty()) throw std::invalid_argument("compute_sff: empty ensemble");
    const Eigen::Index nt = tau_grid.size();
    const std::size_t nr = unfolded_ensemble.size();

    // |sum_a w_a e^{-i 2 pi e_a tau}|^2 per realization and tau, plus the
    // diagonal normalization sum_a w_a^2.
    Eigen::MatrixXd power(nt, nr);
    Eigen::VectorXd diag(nr);
    parallel_for(nr, threads, [&](std::size_t r) {
        const Eigen::VectorXd& eps = unfolded_ensemble[r];
        const Eigen::VectorXd w = gaussian_filter_weights(eps, eta);
        diag(static_cast<Eigen::Index>(r)) = w.squaredNorm();
        constexpr double two_pi = 2.0 * std::numbers::pi;
        for (Eigen::Index k = 0; k < nt; ++k) {
            const double omega = two_pi * tau_grid(k);
            double re = 0.0, im = 0.0;
            for (Eigen::Index a = 0; a < eps.size(); ++a) {
                const double phase = omega * eps(a);
                re += w(a) * std::cos(phase);
                im -= w(a) * std::sin(phase);
            }
            power(k, static_cast<Eigen::Index>(r)) = re * re + im * im;
        }
    });

    const double z = diag.sum();
    if (!(z > 0.0)) throw std::runtime_error("compute_sff: vanishing normalization");

    SFFCurve curve;
    curve.tau = tau_grid;
    curve.K = power.rowwise().sum() / z;  // fixed summation order over realizations
    curve.eta = eta;
    curve.n_realizations = static_cast<int>(nr);
    return curve;
}

double goe_sff(double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("goe_sff: tau must be > 0");
    if (tau < 1.0) return 2.0 * tau - tau * std::log(1.0 + 2.0 * tau);
    return 2.0 - tau * std::log((2.0 * tau + 1.0) / (2.0 * tau - 1.0));
}

ThoulessResult extract_thouless(const SFFCurve& curve, double epsilon, int smoothing_window) {
    const Eigen::Index n = curve.tau.size();
    if (n < 2) throw std::invalid_argument("extract_thouless: empty curve");
    if (!(curve.tau(0) <= 1e-3 && curve.tau(n - 1) >= 5.0))
        throw std::invalid_argument("extract_thouless: grid must cover [1e-3, 5]");
    if (smoothing_window < 1) throw std::invalid_argument("extract_thouless: bad window");

    // Signed log ratio first: ensemble noise has zero mean there, so the
    // moving average suppresses it before the magnitude is thresholded.
    Eigen::VectorXd ratio(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double kg = goe_sff(curve.tau(k));
        ratio(k) = (curve.K(k) > 0.0 && kg > 0.0)
                       ? std::log10(curve.K(k) / kg)
                       : std::numeric_limits<double>::infinity();
    }

    // Centered moving average over `smoothing_window` grid points, clipped at
    // the ends; the grid is log-spaced so this smooths in log tau.
    Eigen::VectorXd smoothed(n);
    const Eigen::Index half = smoothing_window / 2;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index lo = std::max<Eigen::Index>(0, k - half);
        const Eigen::Index hi = std::min<Eigen::Index>(n - 1, k - half + smoothing_window - 1);
        smoothed(k) = std::abs(ratio.segment(lo, hi - lo + 1).mean());
    }

    Eigen::Index heisenberg = 0;  // last grid index with tau <= 1
    for (Eigen::Index k = 0; k < n; ++k)
        if (curve.tau(k) <= 1.0) heisenberg = k;

    // ok(k): criterion holds from k through the Heisenberg index.
    std::vector<char> ok(static_cast<std::size_t>(n), 0);
    bool tail = true;
    for (Eigen::Index k = heisenberg; k >= 0; --k) {
        tail = tail && smoothed(k) <= epsilon;
        ok[static_cast<std::size_t>(k)] = tail ? 1 : 0;
    }
    for (Eigen::Index k = heisenberg + 1; k < n; ++k)
        ok[static_cast<std::size_t>(k)] = smoothed(k) <= epsilon ? 1 : 0;

    ThoulessResult result;
    result.last_log_ratio = smoothed(n - 1);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (ok[static_cast<std::size_t>(k)]) {
            result.tau_th = curve.tau(k);
            break;
        }
    }
    return result;
}

SFFCurve gaa_sff_curve(const ModelParams& base, const EnsembleConfig& ens,
                       const SFFConfig& cfg) {
    validate(base);
    const FockBasis basis = enumerate_basis(base.L, base.N);
    auto unfolded = run_realizations<Eigen::VectorXd>(ens, [&](std::uint64_t seed, int index) {
        ModelParams p = base;
        p.phi = phase_from_seed(seed);
        const SpectrumResult spec = full_diagonalize(build_hamiltonian(p, basis), false, seed);
        try {
            return unfold(spec.eigenvalues, cfg.unfold_degree);
        } catch (const std::exception& e) {
            throw std::runtime_error("realization " + std::to_string(index) +
                                     " (seed=" + std::to_string(seed) + "): " + e.what());
        }
    });
    SFFCurve curve = compute_sff(unfolded, cfg.eta, cfg.tau_grid, ens.threads);
    const ThoulessResult th = extract_thouless(curve, cfg.epsilon, cfg.smoothing_window);
    curve.tau_thouless = th.tau_th;
    curve.last_log_ratio = th.last_log_ratio;
    curve.epsilon_threshold = cfg.epsilon;
    return curve;
}

std::vector<ThoulessScanRow> thouless_vs_alpha(const ModelParams& base,
                                               const std::vector<double>& alphas,
                                               const EnsembleConfig& ens,
                                               const SFFConfig& cfg) {
    if (alphas.empty()) throw std::invalid_argument("thouless_vs_alpha: empty grid");
    std::vector<ThoulessScanRow> rows;
    rows.reserve(alphas.size());
    std::size_t point_index = 0;
    for (double alpha : alphas) {
        ModelParams p = base;
        p.alpha = alpha;
        EnsembleConfig point_ens = ens;
        point_ens.master_seed = derive_seed(ens.master_seed, point_index++);
        try {
            const SFFCurve curve = gaa_sff_curve(p, point_ens, cfg);
            rows.push_back({alpha, curve.tau_thouless, curve.last_log_ratio,
                            curve.n_realizations});
        } catch (const std::exception& e) {
            throw std::runtime_error("thouless_vs_alpha at alpha=" + std::to_string(alpha) +
                                     ": " + e.what());
        }
    }
    return rows;
}

}  // namespace gaa
