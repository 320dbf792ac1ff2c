#include "gaa/spectra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gaa {

SpectrumResult full_diagonalize(const Eigen::Ref<const Eigen::MatrixXd>& h,
                                bool want_vectors, std::uint64_t seed) {
    if (h.rows() != h.cols()) throw std::invalid_argument("full_diagonalize: matrix not square");
    if (h != h.transpose())
        throw std::invalid_argument("full_diagonalize: matrix not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.compute(h, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge (seed=" + std::to_string(seed) +
                                 ")");

    SpectrumResult out;
    out.eigenvalues = solver.eigenvalues();
    if (want_vectors) out.eigenvectors = solver.eigenvectors();
    out.seed = seed;
    return out;
}

IndexRange select_window(const Eigen::Ref<const Eigen::VectorXd>& eigenvalues,
                         const EnergyWindow& window) {
    const Eigen::Index n = eigenvalues.size();
    if (n < 2) throw std::invalid_argument("select_window: need at least 2 eigenvalues");
    if (!(window.lo >= -1.0 && window.lo < window.hi && window.hi <= 1.0))
        throw std::invalid_argument("select_window: require -1 <= lo < hi <= 1");

    const double lo_e = eigenvalues(0), hi_e = eigenvalues(n - 1);
    const double width = hi_e - lo_e;
    IndexRange r;
    if (width <= 0.0) return r;  // flat spectrum: nothing selectable

    auto scaled = [&](Eigen::Index i) { return (2.0 * eigenvalues(i) - hi_e - lo_e) / width; };
    Eigen::Index first = 0;
    while (first < n && scaled(first) < window.lo) ++first;
    Eigen::Index last = first;
    while (last < n && scaled(last) <= window.hi) ++last;
    r.first = first;
    r.last = last;
    return r;
}

IndexRange select_window(const SpectrumResult& spec, const EnergyWindow& window) {
    return select_window(spec.eigenvalues, window);
}

Eigen::VectorXd unfold(const Eigen::Ref<const Eigen::VectorXd>& eigenvalues, int fit_degree,
                       int* monotonicity_violations) {
    const Eigen::Index n = eigenvalues.size();
    if (fit_degree < 1) throw std::invalid_argument("unfold: fit_degree must be >= 1");
    if (n < fit_degree + 2)
        throw std::invalid_argument("unfold: need at least fit_degree + 2 eigenvalues");

    const double lo = eigenvalues(0), hi = eigenvalues(n - 1);
    if (!(hi > lo)) throw std::runtime_error("unfold: zero-width spectrum");

    // Fit the cumulative staircase i + 1/2 in the rescaled variable
    // x = (2E - hi - lo)/(hi - lo); rescaling keeps the Vandermonde well
    // conditioned and makes the map exactly invariant under affine changes
    // of the input spectrum.
    Eigen::VectorXd x = (2.0 * eigenvalues.array() - hi - lo) / (hi - lo);
    Eigen::MatrixXd vand(n, fit_degree + 1);
    vand.col(0).setOnes();
    for (int d = 1; d <= fit_degree; ++d) vand.col(d) = vand.col(d - 1).cwiseProduct(x);
    Eigen::VectorXd staircase =
        Eigen::VectorXd::LinSpaced(n, 0.5, static_cast<double>(n) - 0.5);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vand);
    if (qr.rank() < fit_degree + 1)
        throw std::runtime_error("unfold: singular staircase fit (too few distinct eigenvalues)");
    const Eigen::VectorXd poly = qr.solve(staircase);

    Eigen::VectorXd unfolded = vand * poly;
    if (monotonicity_violations) {
        int bad = 0;
        for (Eigen::Index i = 0; i + 1 < n; ++i)
            if (unfolded(i + 1) < unfolded(i)) ++bad;
        *monotonicity_violations = bad;
    }
    return unfolded;
}

Eigen::MatrixXd single_particle_hamiltonian(const ModelParams& p) {
    ModelParams sp = p;
    sp.N = 1;
    validate(sp);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p.L, p.L);
    for (int site = 1; site <= p.L; ++site)
        h(site - 1, site - 1) = p.lambda * onsite_coefficient(site, p.alpha, p.q, p.phi);
    for (int i = 0; i + 1 < p.L; ++i) {
        h(i, i + 1) += -p.t;
        h(i + 1, i) += -p.t;
    }
    if (p.boundary == Boundary::Periodic) {
        h(0, p.L - 1) += -p.t;
        h(p.L - 1, 0) += -p.t;
    }
    return h;
}

SingleParticleIpr single_particle_ipr(const ModelParams& p) {
    const SpectrumResult spec = full_diagonalize(single_particle_hamiltonian(p), true);
    SingleParticleIpr out;
    out.energies = spec.eigenvalues;
    out.ipr = spec.eigenvectors.array().square().square().colwise().sum().transpose();
    return out;
}

double mobility_edge_energy(const ModelParams& p) {
    if (!(p.alpha > 0.0))
        throw std::invalid_argument("mobility_edge_energy: requires alpha > 0");
    const double sgn = (p.lambda > 0.0) ? 1.0 : (p.lambda < 0.0 ? -1.0 : 0.0);
    return 2.0 * sgn * (std::abs(p.t) - std::abs(p.lambda)) / p.alpha;
}

}  // namespace gaa
