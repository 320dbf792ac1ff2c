#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

namespace gaa {

enum class CorrelationKind { PowerLaw, BKT };
enum class DriftKind { Const, LinearL, InverseL, InverseLogL };

// Correlation length at distance |lambda - lambda_star| from the critical
// point: |d|^(-nu) for PowerLaw, exp(nu / sqrt(|d|)) for BKT. Throws at the
// singular point lambda == lambda_star; callers map it to Theta = 0.
double correlation_length(double lambda, double lambda_star, double nu, CorrelationKind kind);

// Size-dependent critical point: lambda0 (+ lambda1 * L | + lambda1 / L |
// + lambda1 / ln L). L is real-valued so nonlinear drifts can be probed off
// the integer sizes.
double critical_lambda(double L, DriftKind drift, double lambda0, double lambda1);

struct AnsatzParams {
    double nu = 1.0;
    double lambda0 = 1.0;
    double lambda1 = 0.0;  // ignored for DriftKind::Const
};

// Scaling variable Theta = sgn(lambda - lambda*) * L / xi; exactly 0 at the
// critical point.
double theta(double lambda, double L, CorrelationKind kind, DriftKind drift,
             const AnsatzParams& params);

struct CollapsePoint {
    int L = 0;
    double lambda = 0.0;
    double value = 0.0;  // the observable X
};

// Monotonicity defect of the points ordered by Theta (ties broken by
// ascending L, then ascending lambda): sum |X_{j+1} - X_j| / (max X - min X) - 1.
// Exactly 0 iff the ordered values are monotone. Throws when fewer than 3
// points or all values are equal.
double cost_function(const std::vector<CollapsePoint>& points, CorrelationKind kind,
                     DriftKind drift, const AnsatzParams& params);

struct Bounds {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
};

struct DEConfig {
    int population = 40;
    double f_mut = 0.8;
    double cr = 0.9;
    int max_generations = 300;
    int restarts = 8;  // used by collapse(); a single DE run ignores it
    std::uint64_t seed = 1;
};

struct DEResult {
    Eigen::VectorXd best;
    double value = 0.0;
    long evaluations = 0;
};

// Classic rand/1/bin differential evolution: mutant = a + F*(b - c) from three
// distinct members, binomial crossover with one forced coordinate, clamp to
// the box, greedy selection applied synchronously per generation. Returns the
// best member ever evaluated; bit-reproducible for a fixed seed.
DEResult differential_evolution(const std::function<double(const Eigen::VectorXd&)>& objective,
                                const Bounds& bounds, const DEConfig& cfg);

// Box constraints for (nu, lambda0[, lambda1]); the lambda1 range depends on
// the drift form.
Bounds default_collapse_bounds(DriftKind drift);

struct AnsatzSpec {
    CorrelationKind correlation = CorrelationKind::PowerLaw;
    DriftKind drift = DriftKind::Const;
    Bounds bounds;  // empty -> default_collapse_bounds(drift)
};

struct CollapseResult {
    AnsatzParams best;
    double cost = 0.0;
    std::vector<std::tuple<double, double, int>> theta_sorted;  // (Theta, X, L)
    long evaluations = 0;
    std::uint64_t seed = 0;
};

// Minimizes the collapse cost over the ansatz parameters with restarted
// differential evolution (restart r reseeds with derive_seed(cfg.seed, r));
// for DriftKind::Const the lambda1 dimension is absent from the search space.
CollapseResult collapse(const std::vector<CollapsePoint>& points, const AnsatzSpec& ansatz,
                        const DEConfig& cfg);

// Per-size critical points lambda*(L) at the optimum, for drift tables.
std::vector<std::pair<int, double>> critical_lambda_table(
    const std::vector<CollapsePoint>& points, DriftKind drift, const AnsatzParams& params);

// Default lambda range for susceptibility-collapse fits: the crossing region
// drifts down with alpha, anchored at [2.2, 3.6] (alpha 0), [1.75, 3.15]
// (alpha 0.3) and [1.3, 2.7] (alpha 0.7); piecewise-linear in between,
// clamped outside.
std::pair<double, double> susceptibility_fit_window(double alpha);

}  // namespace gaa
