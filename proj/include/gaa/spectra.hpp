#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "gaa/model.hpp"

namespace gaa {

// One realization's spectrum. Eigenvalues ascending; eigenvectors are the
// matching orthonormal columns when requested, otherwise 0x0.
struct SpectrumResult {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    ModelParams params;
    std::uint64_t seed = 0;

    Eigen::Index dim() const { return eigenvalues.size(); }
    bool has_vectors() const { return eigenvectors.size() > 0; }
};

// Dense symmetric eigendecomposition. The input must be exactly symmetric;
// non-convergence is a hard error carrying `seed` in the message.
SpectrumResult full_diagonalize(const Eigen::Ref<const Eigen::MatrixXd>& h,
                                bool want_vectors, std::uint64_t seed = 0);

// Bounds in scaled-spectrum units: E is mapped to (2E - Emax - Emin)/(Emax - Emin),
// which lies in [-1, 1].
struct EnergyWindow {
    double lo = -0.1;
    double hi = 0.1;
};

// Half-open contiguous index range [first, last).
struct IndexRange {
    Eigen::Index first = 0;
    Eigen::Index last = 0;
    Eigen::Index size() const { return last - first; }
    bool empty() const { return last <= first; }
};

// Indices whose scaled eigenvalue lies in [window.lo, window.hi] (inclusive).
// A zero-width spectrum yields an empty range; callers skip and record it.
IndexRange select_window(const Eigen::Ref<const Eigen::VectorXd>& eigenvalues,
                         const EnergyWindow& window);
IndexRange select_window(const SpectrumResult& spec, const EnergyWindow& window);

// Polynomial unfolding: least-squares fit of the staircase i + 1/2 against the
// eigenvalues (degree `fit_degree`, evaluated in a rescaled variable), then
// mapped through the fit. The output has unit mean spacing up to fit residuals.
// Non-monotone stretches are counted into *monotonicity_violations when given.
// Throws when fewer than fit_degree + 2 eigenvalues or the fit is singular.
Eigen::VectorXd unfold(const Eigen::Ref<const Eigen::VectorXd>& eigenvalues,
                       int fit_degree = 3, int* monotonicity_violations = nullptr);

// L x L one-particle chain matrix: diagonal lambda*C_i, hopping -t, wrap bond
// for periodic boundary. V plays no role in the one-particle sector.
Eigen::MatrixXd single_particle_hamiltonian(const ModelParams& p);

struct SingleParticleIpr {
    Eigen::VectorXd energies;  // ascending
    Eigen::VectorXd ipr;       // sum_i |psi_n(i)|^4, in [1/L, 1]
};

// Inverse participation ratio of every one-particle eigenstate.
SingleParticleIpr single_particle_ipr(const ModelParams& p);

// Energy separating extended from localized one-particle states:
// alpha*E = 2*sgn(lambda)*(|t| - |lambda|). Requires alpha > 0.
double mobility_edge_energy(const ModelParams& p);

}  // namespace gaa
