#pragma once

#include <Eigen/Dense>

#include <vector>

#include "gaa/ensemble.hpp"
#include "gaa/model.hpp"
#include "gaa/spectra.hpp"

namespace gaa {

// Per-realization fidelity susceptibilities of the windowed eigenstates.
struct ChiResult {
    Eigen::VectorXd chi;       // chi_n >= 0, one entry per windowed state
    double zeta = 0.0;         // mean ln chi over the positive entries
    double f_scaled = 0.0;     // exp(zeta) / 2^L
    int n_excluded_pairs = 0;  // |E_n - E_m| below the degeneracy floor
    int n_zero_chi = 0;        // exact zeros skipped by the log average
    PerturbationKind kind = PerturbationKind::ExtensiveNN;
    ModelParams params;
};

// chi_n = sum_{m != n} |<n|H1|m>|^2 / (E_n - E_m)^2 for every windowed state n,
// with the m-sum over the full spectrum. H1 is the diagonal `perturbation` in
// the occupation basis; its eigenbasis matrix elements come from the dense
// sandwich V^T diag(d) V. Pairs closer than `degeneracy_floor` (default
// 1e-12 times the spectral width) are excluded and counted, not regularized.
ChiResult fidelity_susceptibility(const SpectrumResult& spec,
                                  const Eigen::Ref<const Eigen::VectorXd>& perturbation,
                                  const IndexRange& window, double degeneracy_floor = -1.0);

struct LogFidelityStats {
    double zeta = 0.0;        // pooled mean of ln chi over (realization, state) pairs
    double f_scaled = 0.0;    // exp(zeta) / 2^L
    double stderr_zeta = 0.0; // from the realization-level spread
    long n_states = 0;
    int n_realizations = 0;
    long n_excluded_pairs = 0;
};

// Double average of ln chi over eigenstates and realizations. Throws when no
// positive chi value exists in the whole ensemble.
LogFidelityStats log_fidelity_stats(const std::vector<ChiResult>& ensemble);

struct ErgodicScalingFit {
    double slope = 0.0;             // least-squares slope of zeta vs L
    Eigen::VectorXd residuals;      // zeta(L) - L*ln(2), one per size
};

// Linear fit of zeta against system size; needs at least 3 sizes.
ErgodicScalingFit ergodic_scaling_fit(const std::vector<int>& sizes,
                                      const Eigen::Ref<const Eigen::VectorXd>& zetas);

struct ChiSweepRow {
    double alpha = 0.0;
    double lambda = 0.0;
    int L = 0;
    PerturbationKind kind = PerturbationKind::ExtensiveNN;
    double zeta = 0.0;
    double f_scaled = 0.0;
    double stderr_zeta = 0.0;
    long n_excluded = 0;
};

// zeta at one parameter point, averaged over the realization ensemble.
LogFidelityStats gaa_chi_point(const ModelParams& base, PerturbationKind kind,
                               const EnsembleConfig& ens, const EnergyWindow& window);

// Sweep over a lambda grid at fixed alpha; point k uses master seed
// derive_seed(ens.master_seed, k).
std::vector<ChiSweepRow> chi_lambda_sweep(const ModelParams& base,
                                          const std::vector<double>& lambdas,
                                          PerturbationKind kind, const EnsembleConfig& ens,
                                          const EnergyWindow& window);

}  // namespace gaa
