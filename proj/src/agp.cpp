#include "gaa/agp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gaa {

ChiResult fidelity_susceptibility(const SpectrumResult& spec,
                                  const Eigen::Ref<const Eigen::VectorXd>& perturbation,
                                  const IndexRange& window, double degeneracy_floor) {
    if (!spec.has_vectors())
        throw std::invalid_argument("fidelity_susceptibility: eigenvectors required");
    const Eigen::Index dim = spec.dim();
    if (perturbation.size() != dim)
        throw std::invalid_argument("fidelity_susceptibility: perturbation length mismatch");
    if (window.first < 0 || window.last > dim)
        throw std::invalid_argument("fidelity_susceptibility: window out of range");

    const Eigen::VectorXd& e = spec.eigenvalues;
    if (degeneracy_floor < 0.0) degeneracy_floor = 1e-12 * (e(dim - 1) - e(0));

    // Eigenbasis matrix elements of the diagonal perturbation; the dominant
    // O(D^3) step, organized as two dense products.
    const Eigen::MatrixXd weighted = perturbation.asDiagonal() * spec.eigenvectors;
    const Eigen::MatrixXd elements = spec.eigenvectors.transpose() * weighted;

    ChiResult out;
    out.params = spec.params;
    out.chi.resize(window.size());
    for (Eigen::Index n = window.first; n < window.last; ++n) {
        double chi = 0.0;
        for (Eigen::Index m = 0; m < dim; ++m) {
            if (m == n) continue;
            const double gap = e(n) - e(m);
            if (std::abs(gap) < degeneracy_floor) {
                ++out.n_excluded_pairs;
                continue;
            }
            const double elem = elements(n, m);
            chi += elem * elem / (gap * gap);
        }
        out.chi(n - window.first) = chi;
    }

    double log_sum = 0.0;
    Eigen::Index log_count = 0;
    for (Eigen::Index i = 0; i < out.chi.size(); ++i) {
        if (out.chi(i) > 0.0) {
            log_sum += std::log(out.chi(i));
            ++log_count;
        } else {
            ++out.n_zero_chi;
        }
    }
    out.zeta = log_count > 0 ? log_sum / static_cast<double>(log_count)
                             : -std::numeric_limits<double>::infinity();
    out.f_scaled = std::exp(out.zeta) / std::pow(2.0, spec.params.L);
    return out;
}

LogFidelityStats log_fidelity_stats(const std::vector<ChiResult>& ensemble) {
    if (ensemble.empty()) throw std::invalid_argument("log_fidelity_stats: empty ensemble");
    LogFidelityStats out;
    double pooled_sum = 0.0;
    long pooled_count = 0;
    std::vector<double> realization_means;
    realization_means.reserve(ensemble.size());
    for (const auto& r : ensemble) {
        out.n_excluded_pairs += r.n_excluded_pairs;
        double sum = 0.0;
        long count = 0;
        for (Eigen::Index i = 0; i < r.chi.size(); ++i) {
            if (r.chi(i) > 0.0) {
                sum += std::log(r.chi(i));
                ++count;
            }
        }
        if (count == 0) continue;
        pooled_sum += sum;
        pooled_count += count;
        realization_means.push_back(sum / static_cast<double>(count));
    }
    if (pooled_count == 0)
        throw std::runtime_error("log_fidelity_stats: all chi values are zero");
    out.zeta = pooled_sum / static_cast<double>(pooled_count);
    out.n_states = pooled_count;
    out.n_realizations = static_cast<int>(realization_means.size());
    out.f_scaled = std::exp(out.zeta) / std::pow(2.0, ensemble.front().params.L);
    if (realization_means.size() > 1) {
        const double k = static_cast<double>(realization_means.size());
        double mean = 0.0;
        for (double m : realization_means) mean += m;
        mean /= k;
        double ss = 0.0;
        for (double m : realization_means) ss += (m - mean) * (m - mean);
        out.stderr_zeta = std::sqrt(ss / (k - 1.0) / k);
    }
    return out;
}

ErgodicScalingFit ergodic_scaling_fit(const std::vector<int>& sizes,
                                      const Eigen::Ref<const Eigen::VectorXd>& zetas) {
    if (sizes.size() < 3) throw std::invalid_argument("ergodic_scaling_fit: need >= 3 sizes");
    if (static_cast<Eigen::Index>(sizes.size()) != zetas.size())
        throw std::invalid_argument("ergodic_scaling_fit: size/zeta length mismatch");
    const double n = static_cast<double>(sizes.size());
    double sl = 0.0, sz = 0.0, sll = 0.0, slz = 0.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double l = static_cast<double>(sizes[i]);
        sl += l;
        sz += zetas(static_cast<Eigen::Index>(i));
        sll += l * l;
        slz += l * zetas(static_cast<Eigen::Index>(i));
    }
    ErgodicScalingFit fit;
    fit.slope = (n * slz - sl * sz) / (n * sll - sl * sl);
    fit.residuals.resize(static_cast<Eigen::Index>(sizes.size()));
    constexpr double ln2 = 0.6931471805599453;
    for (std::size_t i = 0; i < sizes.size(); ++i)
        fit.residuals(static_cast<Eigen::Index>(i)) =
            zetas(static_cast<Eigen::Index>(i)) - static_cast<double>(sizes[i]) * ln2;
    return fit;
}

LogFidelityStats gaa_chi_point(const ModelParams& base, PerturbationKind kind,
                               const EnsembleConfig& ens, const EnergyWindow& window) {
    validate(base);
    const FockBasis basis = enumerate_basis(base.L, base.N);
    const Eigen::VectorXd perturbation = build_perturbation(kind, base, basis);
    auto results = run_realizations<ChiResult>(ens, [&](std::uint64_t seed, int) {
        ModelParams p = base;
        p.phi = phase_from_seed(seed);
        SpectrumResult spec = full_diagonalize(build_hamiltonian(p, basis), true, seed);
        spec.params = p;
        const IndexRange w = select_window(spec, window);
        ChiResult r = fidelity_susceptibility(spec, perturbation, w);
        r.kind = kind;
        return r;
    });
    return log_fidelity_stats(results);
}

std::vector<ChiSweepRow> chi_lambda_sweep(const ModelParams& base,
                                          const std::vector<double>& lambdas,
                                          PerturbationKind kind, const EnsembleConfig& ens,
                                          const EnergyWindow& window) {
    if (lambdas.empty()) throw std::invalid_argument("chi_lambda_sweep: empty grid");
    std::vector<ChiSweepRow> rows;
    rows.reserve(lambdas.size());
    std::size_t point_index = 0;
    for (double lambda : lambdas) {
        ModelParams p = base;
        p.lambda = lambda;
        EnsembleConfig point_ens = ens;
        point_ens.master_seed = derive_seed(ens.master_seed, point_index++);
        try {
            const LogFidelityStats stats = gaa_chi_point(p, kind, point_ens, window);
            rows.push_back({p.alpha, lambda, p.L, kind, stats.zeta, stats.f_scaled,
                            stats.stderr_zeta, stats.n_excluded_pairs});
        } catch (const std::exception& e) {
            throw std::runtime_error("chi_lambda_sweep at lambda=" + std::to_string(lambda) +
                                     ": " + e.what());
        }
    }
    return rows;
}

}  // namespace gaa
