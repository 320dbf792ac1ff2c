#include "gaa/rstat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gaa {

Eigen::VectorXd gap_ratios(const Eigen::Ref<const Eigen::VectorXd>& eigenvalues,
                           int* zero_gap_pairs) {
    const Eigen::Index n = eigenvalues.size();
    if (n < 3) throw std::invalid_argument("gap_ratios: need at least 3 eigenvalues");
    Eigen::VectorXd r(n - 2);
    int zeros = 0;
    for (Eigen::Index i = 0; i + 2 < n; ++i) {
        const double d0 = eigenvalues(i + 1) - eigenvalues(i);
        const double d1 = eigenvalues(i + 2) - eigenvalues(i + 1);
        if (d0 < 0.0 || d1 < 0.0)
            throw std::invalid_argument("gap_ratios: eigenvalues must be nondecreasing");
        if (d0 == 0.0 || d1 == 0.0) {
            ++zeros;
            r(i) = (d0 == 0.0 && d1 == 0.0) ? 1.0 : 0.0;
        } else {
            r(i) = std::min(d0, d1) / std::max(d0, d1);
        }
    }
    if (zero_gap_pairs) *zero_gap_pairs = zeros;
    return r;
}

GapRatioSummary mean_gap_ratio(const std::vector<Eigen::VectorXd>& windowed_spectra) {
    GapRatioSummary out;
    std::vector<double> means;
    means.reserve(windowed_spectra.size());
    for (const auto& evals : windowed_spectra) {
        if (evals.size() < 3) {
            ++out.n_skipped;
            continue;
        }
        int zeros = 0;
        const Eigen::VectorXd r = gap_ratios(evals, &zeros);
        out.n_degenerate += zeros;
        out.n_states += evals.size();
        means.push_back(r.mean());
    }
    if (means.empty()) throw std::runtime_error("mean_gap_ratio: no usable realizations");
    out.n_realizations = static_cast<int>(means.size());
    double sum = 0.0;
    for (double m : means) sum += m;
    out.mean_r = sum / static_cast<double>(means.size());
    if (means.size() > 1) {
        double ss = 0.0;
        for (double m : means) ss += (m - out.mean_r) * (m - out.mean_r);
        const double var = ss / static_cast<double>(means.size() - 1);
        out.stderr_r = std::sqrt(var / static_cast<double>(means.size()));
    }
    return out;
}

namespace {

struct WindowedRealization {
    Eigen::VectorXd eigenvalues;  // empty when the window was unusable
};

}  // namespace

GapRatioSummary gaa_gap_ratio_point(const ModelParams& base, const EnsembleConfig& ens,
                                    const EnergyWindow& window, bool full_spectrum) {
    validate(base);
    const FockBasis basis = enumerate_basis(base.L, base.N);
    auto windowed = run_realizations<WindowedRealization>(
        ens, [&](std::uint64_t seed, int) {
            ModelParams p = base;
            p.phi = phase_from_seed(seed);
            const SpectrumResult spec =
                full_diagonalize(build_hamiltonian(p, basis), false, seed);
            WindowedRealization out;
            if (full_spectrum) {
                out.eigenvalues = spec.eigenvalues;
            } else {
                const IndexRange w = select_window(spec, window);
                out.eigenvalues = spec.eigenvalues.segment(w.first, w.size());
            }
            return out;
        });
    std::vector<Eigen::VectorXd> segments;
    segments.reserve(windowed.size());
    for (auto& w : windowed) segments.push_back(std::move(w.eigenvalues));
    return mean_gap_ratio(segments);
}

std::vector<PhaseDiagramPoint> phase_diagram_scan(const ModelParams& base,
                                                  const std::vector<double>& alphas,
                                                  const std::vector<double>& lambdas,
                                                  const EnsembleConfig& ens,
                                                  const EnergyWindow& window,
                                                  bool full_spectrum) {
    if (alphas.empty() || lambdas.empty())
        throw std::invalid_argument("phase_diagram_scan: empty grid");
    std::vector<PhaseDiagramPoint> table;
    table.reserve(alphas.size() * lambdas.size());
    std::size_t point_index = 0;
    for (double alpha : alphas) {
        for (double lambda : lambdas) {
            ModelParams p = base;
            p.alpha = alpha;
            p.lambda = lambda;
            EnsembleConfig point_ens = ens;
            point_ens.master_seed = derive_seed(ens.master_seed, point_index++);
            try {
                table.push_back({alpha, lambda,
                                 gaa_gap_ratio_point(p, point_ens, window, full_spectrum)});
            } catch (const std::exception& e) {
                throw std::runtime_error("phase_diagram_scan at alpha=" + std::to_string(alpha) +
                                         " lambda=" + std::to_string(lambda) + ": " + e.what());
            }
        }
    }
    return table;
}

}  // namespace gaa
