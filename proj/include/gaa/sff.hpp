#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "gaa/ensemble.hpp"
#include "gaa/model.hpp"
#include "gaa/spectra.hpp"

namespace gaa {

// Log-spaced time grid, inclusive endpoints, in units of the Heisenberg time.
Eigen::VectorXd log_tau_grid(double lo = 1e-4, double hi = 10.0, int n = 500);

// Spectral-filter and Thouless-extraction knobs. epsilon is the threshold on
// the smoothed |log10 K/K_GOE|; it must stay below |log10 K_GOE(1)| ~ 0.045,
// otherwise a featureless K = 1 curve would cross the reference before the
// Heisenberg time.
struct SFFConfig {
    double eta = 0.5;          // filter width as a fraction of the spectral spread
    double epsilon = 0.02;     // ratio threshold for the Thouless criterion
    int smoothing_window = 25; // moving-average length on the log-tau grid
    int unfold_degree = 9;     // the interacting DOS needs more than a cubic staircase fit
    Eigen::VectorXd tau_grid = log_tau_grid();
};

// Gaussian weights exp[-(e - mean)^2 / (2 (eta*Gamma)^2)] with mean/variance
// taken from this realization's unfolded spectrum. Throws on zero variance.
Eigen::VectorXd gaussian_filter_weights(const Eigen::Ref<const Eigen::VectorXd>& unfolded,
                                        double eta);

struct SFFCurve {
    Eigen::VectorXd tau;
    Eigen::VectorXd K;
    double eta = 0.5;
    int n_realizations = 0;
    std::optional<double> tau_thouless;  // empty: criterion unmet below the grid end
    double last_log_ratio = 0.0;         // smoothed |log10 K/K_GOE| at the grid end
    double epsilon_threshold = 0.0;
};

// K(tau) = <|sum_a w_a exp(-i 2 pi e_a tau)|^2> / Z with Z = <sum_a w_a^2>,
// averaged over the ensemble of unfolded spectra; K -> 1 at late times.
// The reduction runs in realization-index order regardless of `threads`.
SFFCurve compute_sff(const std::vector<Eigen::VectorXd>& unfolded_ensemble, double eta,
                     const Eigen::Ref<const Eigen::VectorXd>& tau_grid, int threads = 1);

// Orthogonal-ensemble form factor: 2*tau - tau*ln(1 + 2*tau) below tau = 1,
// 2 - tau*ln((2*tau + 1)/(2*tau - 1)) above; continuous at tau = 1.
double goe_sff(double tau);

struct ThoulessResult {
    std::optional<double> tau_th;
    double last_log_ratio = 0.0;
};

// Smallest grid time from which the smoothed |log10 K/K_GOE| stays at or
// below epsilon all the way to the Heisenberg time (sustained approach, not
// first touch). When that never happens before the grid ends the result is
// empty and carries the final smoothed ratio.
ThoulessResult extract_thouless(const SFFCurve& curve, double epsilon, int smoothing_window);

// Chain form factor at one parameter point: per-realization unfolding of the
// full spectrum, Gaussian filtering, ensemble average, Thouless extraction.
SFFCurve gaa_sff_curve(const ModelParams& base, const EnsembleConfig& ens,
                       const SFFConfig& cfg);

struct ThoulessScanRow {
    double alpha = 0.0;
    std::optional<double> tau_th;
    double last_log_ratio = 0.0;
    int n_realizations = 0;
};

// Thouless time across an alpha grid at fixed lambda; point k uses master
// seed derive_seed(ens.master_seed, k), so a standalone gaa_sff_curve run
// with that seed reproduces the k-th row exactly.
std::vector<ThoulessScanRow> thouless_vs_alpha(const ModelParams& base,
                                               const std::vector<double>& alphas,
                                               const EnsembleConfig& ens, const SFFConfig& cfg);

}  // namespace gaa
