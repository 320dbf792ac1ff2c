#pragma once

#include <Eigen/Dense>

#include <vector>

#include "gaa/ensemble.hpp"
#include "gaa/model.hpp"
#include "gaa/spectra.hpp"

namespace gaa {

// Reference values of the mean adjacent gap ratio.
inline constexpr double kGapRatioGOE = 0.5307;          // orthogonal ensemble
inline constexpr double kGapRatioPoisson = 0.38629436;  // 2 ln 2 - 1

// r_i = min(d_i, d_{i+1}) / max(d_i, d_{i+1}) with d_i the consecutive gaps of
// an ascending spectrum; output length is n - 2. Exact zero gaps follow the
// tie rule r = 1 when both gaps vanish, r = 0 when exactly one does, and each
// such pair increments *zero_gap_pairs when given.
Eigen::VectorXd gap_ratios(const Eigen::Ref<const Eigen::VectorXd>& eigenvalues,
                           int* zero_gap_pairs = nullptr);

struct GapRatioSummary {
    double mean_r = 0.0;      // eigenstate average, then realization average
    double stderr_r = 0.0;    // standard error over realizations
    long n_states = 0;        // eigenvalues entering the statistics
    int n_realizations = 0;   // realizations with a usable window
    int n_skipped = 0;        // realizations dropped (window too small)
    int n_degenerate = 0;     // zero-gap pairs hit by the tie rule
};

// Ensemble mean of r: average over eigenstates within each realization, then
// over realizations; the standard error comes from the realization spread.
// Realizations with fewer than 3 windowed eigenvalues are skipped and counted.
GapRatioSummary mean_gap_ratio(const std::vector<Eigen::VectorXd>& windowed_spectra);

struct PhaseDiagramPoint {
    double alpha = 0.0;
    double lambda = 0.0;
    GapRatioSummary stats;
};

// Gap-ratio statistics of the chain at one parameter point. The phase offset
// of realization i is drawn from derive_seed(master_seed, i).
GapRatioSummary gaa_gap_ratio_point(const ModelParams& base, const EnsembleConfig& ens,
                                    const EnergyWindow& window, bool full_spectrum = false);

// Scan over an (alpha, lambda) grid; point k uses master seed
// derive_seed(ens.master_seed, k) with k running lambda-fastest.
std::vector<PhaseDiagramPoint> phase_diagram_scan(const ModelParams& base,
                                                  const std::vector<double>& alphas,
                                                  const std::vector<double>& lambdas,
                                                  const EnsembleConfig& ens,
                                                  const EnergyWindow& window,
                                                  bool full_spectrum = false);

}  // namespace gaa
