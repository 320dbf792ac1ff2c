#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "gaa/agp.hpp"
#include "gaa/model.hpp"
#include "gaa/spectra.hpp"
#include "oracles.hpp"

using namespace gaa;

namespace {

SpectrumResult chain_spectrum(const ModelParams& p) {
    const FockBasis basis = enumerate_basis(p.L, p.N);
    SpectrumResult s = full_diagonalize(build_hamiltonian(p, basis), true);
    s.params = p;
    return s;
}

IndexRange full_range(const SpectrumResult& s) { return IndexRange{0, s.dim()}; }

}  // namespace

TEST_SUITE("agp") {

TEST_CASE("two-level system: single term in the sum") {
    // H = diag(0, delta) rotated so a diagonal perturbation acquires an
    // off-diagonal element v in the eigenbasis.
    const double delta = 0.7;
    const double angle = 0.3;
    Eigen::MatrixXd u(2, 2);
    u << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    Eigen::MatrixXd h = u * Eigen::Vector2d(0.0, delta).asDiagonal() * u.transpose();
    h = 0.5 * (h + h.transpose().eval());  // exact symmetry under rounding

    SpectrumResult s = full_diagonalize(h, true);
    s.params.L = 2;
    const Eigen::VectorXd d = Eigen::Vector2d(1.0, 0.0);
    const ChiResult r = fidelity_susceptibility(s, d, IndexRange{0, 2}, 0.0);

    const double v = s.eigenvectors.col(0).dot(d.asDiagonal() * s.eigenvectors.col(1));
    const double want = v * v / (delta * delta);
    CHECK(r.chi(0) == doctest::Approx(want).epsilon(1e-10));
    CHECK(r.chi(1) == doctest::Approx(want).epsilon(1e-10));
    CHECK(r.f_scaled == doctest::Approx(std::exp(r.zeta) / 4.0).epsilon(1e-14));
}

TEST_CASE("perturbation proportional to identity gives zero") {
    ModelParams p;
    p.L = 6;
    p.N = 3;
    p.lambda = 0.9;
    p.phi = 0.4;
    const SpectrumResult s = chain_spectrum(p);
    const Eigen::VectorXd d = Eigen::VectorXd::Constant(s.dim(), 3.7);
    const ChiResult r = fidelity_susceptibility(s, d, full_range(s));
    CHECK(r.chi.cwiseAbs().maxCoeff() < 1e-18);  // zero up to eigenvector rounding

    ChiResult zeroed = r;
    zeroed.chi.setZero();
    CHECK_THROWS(log_fidelity_stats({zeroed}));  // all-zero ensemble
}

TEST_CASE("finite-difference overlap oracle at L = 8") {
    ModelParams p;
    p.L = 8;
    p.N = 4;
    p.lambda = 0.65;
    p.alpha = 0.0;
    p.V = 1.0;
    p.phi = 0.83;
    const FockBasis basis = enumerate_basis(p.L, p.N);
    const Eigen::VectorXd d = build_perturbation(PerturbationKind::ExtensiveNN, p, basis);

    const Eigen::MatrixXd h0 = build_hamiltonian(p, basis);
    SpectrumResult s0 = full_diagonalize(h0, true);
    s0.params = p;

    const double beta = 1e-5;
    const Eigen::MatrixXd h1 = h0 + beta * Eigen::MatrixXd(d.asDiagonal());
    const SpectrumResult s1 = full_diagonalize(h1, true);

    const IndexRange window = select_window(s0, EnergyWindow{-0.1, 0.1});
    REQUIRE(window.size() > 0);
    const ChiResult r = fidelity_susceptibility(s0, d, window);

    const double width = s0.eigenvalues(s0.dim() - 1) - s0.eigenvalues(0);
    int compared = 0;
    for (Eigen::Index n = window.first; n < window.last; ++n) {
        // Skip near-degenerate states where the overlap pairing is ambiguous.
        const double gap_below = n > 0 ? s0.eigenvalues(n) - s0.eigenvalues(n - 1) : width;
        const double gap_above =
            n + 1 < s0.dim() ? s0.eigenvalues(n + 1) - s0.eigenvalues(n) : width;
        if (std::min(gap_below, gap_above) < 1e-4 * width) continue;
        const double overlap = std::abs(s0.eigenvectors.col(n).dot(s1.eigenvectors.col(n)));
        const double fd_chi = (1.0 - overlap * overlap) / (beta * beta);
        const double lib_chi = r.chi(n - window.first);
        if (lib_chi < 1e-6) continue;  // relative comparison is meaningless at zero
        CHECK(fd_chi == doctest::Approx(lib_chi).epsilon(1e-3));
        ++compared;
    }
    CHECK(compared > 5);
}

TEST_CASE("invariances: energy shift, spectrum scale, perturbation scale") {
    ModelParams p;
    p.L = 6;
    p.N = 3;
    p.lambda = 1.2;
    p.alpha = 0.3;
    p.phi = 0.2;
    const FockBasis basis = enumerate_basis(p.L, p.N);
    const Eigen::VectorXd d = build_perturbation(PerturbationKind::LocalDensity, p, basis);
    SpectrumResult s = chain_spectrum(p);
    const IndexRange w = full_range(s);
    const ChiResult base = fidelity_susceptibility(s, d, w, 0.0);

    // Global energy shift: only differences enter, so chi agrees up to the
    // one-ulp rounding of each shifted eigenvalue.
    SpectrumResult shifted = s;
    shifted.eigenvalues.array() += 4.5;
    const ChiResult shift_r = fidelity_susceptibility(shifted, d, w, 0.0);
    for (Eigen::Index i = 0; i < base.chi.size(); ++i)
        CHECK(shift_r.chi(i) == doctest::Approx(base.chi(i)).epsilon(1e-12));

    // H -> s H: chi scales as 1/s^2.
    SpectrumResult scaled = s;
    scaled.eigenvalues *= 2.0;
    const ChiResult scale_r = fidelity_susceptibility(scaled, d, w, 0.0);
    for (Eigen::Index i = 0; i < base.chi.size(); ++i)
        CHECK(scale_r.chi(i) == doctest::Approx(base.chi(i) / 4.0).epsilon(1e-10));

    // d -> a d: chi scales as a^2.
    const ChiResult amp_r = fidelity_susceptibility(s, (3.0 * d.array()).matrix(), w, 0.0);
    for (Eigen::Index i = 0; i < base.chi.size(); ++i)
        CHECK(amp_r.chi(i) == doctest::Approx(9.0 * base.chi(i)).epsilon(1e-10));
}

TEST_CASE("dense sandwich equals the brute-force double loop at L = 6") {
    ModelParams p;
    p.L = 6;
    p.N = 3;
    p.lambda = 0.8;
    p.alpha = 0.5;
    p.V = 1.0;
    p.phi = 1.9;
    const FockBasis basis = enumerate_basis(p.L, p.N);
    const Eigen::VectorXd d = build_perturbation(PerturbationKind::ExtensiveNN, p, basis);
    SpectrumResult s = chain_spectrum(p);
    const double floor = 1e-12 * (s.eigenvalues(s.dim() - 1) - s.eigenvalues(0));
    const ChiResult r = fidelity_susceptibility(s, d, full_range(s));

    double lib_sum = 0.0, brute_sum = 0.0;
    for (Eigen::Index n = 0; n < s.dim(); ++n) {
        lib_sum += r.chi(n);
        brute_sum += oracle::chi_brute_force(s.eigenvectors, s.eigenvalues, d, n, floor);
    }
    CHECK(lib_sum == doctest::Approx(brute_sum).epsilon(1e-9));
}

TEST_CASE("log statistics pool states and realizations") {
    ChiResult a;
    a.params.L = 4;
    a.chi.resize(1);
    a.chi << std::exp(2.0);
    const LogFidelityStats single = log_fidelity_stats({a});
    CHECK(single.zeta == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(single.f_scaled == doctest::Approx(std::exp(2.0) / 16.0).epsilon(1e-12));

    ChiResult b = a;
    b.chi.resize(2);
    b.chi << 1.0, std::exp(4.0);
    const LogFidelityStats two = log_fidelity_stats({b});
    CHECK(two.zeta == doctest::Approx(2.0).epsilon(1e-12));

    const LogFidelityStats pooled = log_fidelity_stats({a, b});
    CHECK(pooled.zeta == doctest::Approx(2.0).epsilon(1e-12));  // (2 + 0 + 4) / 3
    CHECK(pooled.n_states == 3);
    CHECK(pooled.n_realizations == 2);
}

TEST_CASE("scaling fit recovers synthetic slopes") {
    const std::vector<int> sizes = {8, 10, 12, 14};
    constexpr double ln2 = 0.6931471805599453;
    Eigen::VectorXd zetas(4);
    for (int i = 0; i < 4; ++i) zetas(i) = sizes[static_cast<std::size_t>(i)] * ln2 + 0.3;
    const ErgodicScalingFit flat = ergodic_scaling_fit(sizes, zetas);
    CHECK(flat.slope == doctest::Approx(ln2).epsilon(1e-12));
    for (Eigen::Index i = 0; i < 4; ++i)
        CHECK(flat.residuals(i) == doctest::Approx(0.3).epsilon(1e-10));

    for (int i = 0; i < 4; ++i)
        zetas(i) = sizes[static_cast<std::size_t>(i)] * (ln2 + 0.01);
    const ErgodicScalingFit tilted = ergodic_scaling_fit(sizes, zetas);
    CHECK(tilted.slope == doctest::Approx(ln2 + 0.01).epsilon(1e-12));

    CHECK_THROWS(ergodic_scaling_fit({8, 10}, zetas.head(2)));
}

TEST_CASE("chain sweep emits finite statistics") {
    ModelParams base;
    base.L = 8;
    base.N = 4;
    base.V = 1.0;
    EnsembleConfig ens;
    ens.n_realizations = 6;
    ens.master_seed = 41;
    const auto rows = chi_lambda_sweep(base, {0.65, 3.5}, PerturbationKind::ExtensiveNN, ens,
                                       EnergyWindow{-0.1, 0.1});
    CHECK(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(std::isfinite(row.zeta));
        CHECK(row.f_scaled > 0.0);
        CHECK(row.L == 8);
    }
    // Ergodic zeta beats the localized tail.
    CHECK(rows[0].zeta > rows[1].zeta);
}

}  // TEST_SUITE
