#include "gaa/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "gaa/rng.hpp"

namespace gaa {

double correlation_length(double lambda, double lambda_star, double nu, CorrelationKind kind) {
    const double d = std::abs(lambda - lambda_star);
    if (d == 0.0) throw std::domain_error("correlation_length: singular at lambda = lambda*");
    return kind == CorrelationKind::PowerLaw ? std::pow(d, -nu) : std::exp(nu / std::sqrt(d));
}

double critical_lambda(double L, DriftKind drift, double lambda0, double lambda1) {
    if (L < 2.0) throw std::invalid_argument("critical_lambda: L must be >= 2");
    switch (drift) {
        case DriftKind::Const: return lambda0;
        case DriftKind::LinearL: return lambda0 + lambda1 * L;
        case DriftKind::InverseL: return lambda0 + lambda1 / L;
        case DriftKind::InverseLogL: return lambda0 + lambda1 / std::log(L);
    }
    throw std::logic_error("critical_lambda: unknown drift");
}

double theta(double lambda, double L, CorrelationKind kind, DriftKind drift,
             const AnsatzParams& params) {
    const double star = critical_lambda(L, drift, params.lambda0, params.lambda1);
    const double d = lambda - star;
    if (d == 0.0) return 0.0;
    const double sign = d > 0.0 ? 1.0 : -1.0;
    // L / xi written directly; for BKT this tends to 0 at the critical point.
    const double l_over_xi = kind == CorrelationKind::PowerLaw
                                 ? L * std::pow(std::abs(d), params.nu)
                                 : L * std::exp(-params.nu / std::sqrt(std::abs(d)));
    return sign * l_over_xi;
}

double cost_function(const std::vector<CollapsePoint>& points, CorrelationKind kind,
                     DriftKind drift, const AnsatzParams& params) {
    if (points.size() < 3) throw std::invalid_argument("cost_function: need >= 3 points");

    struct Entry {
        double theta;
        double value;
        int L;
        double lambda;
    };
    std::vector<Entry> entries;
    entries.reserve(points.size());
    for (const auto& p : points)
        entries.push_back({theta(p.lambda, p.L, kind, drift, params), p.value, p.L, p.lambda});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.theta != b.theta) return a.theta < b.theta;
        if (a.L != b.L) return a.L < b.L;
        return a.lambda < b.lambda;
    });

    double lo = entries.front().value, hi = entries.front().value;
    for (const auto& e : entries) {
        lo = std::min(lo, e.value);
        hi = std::max(hi, e.value);
    }
    if (!(hi > lo)) throw std::runtime_error("cost_function: all values equal");

    bool up = true, down = true;
    double variation = 0.0;
    for (std::size_t j = 0; j + 1 < entries.size(); ++j) {
        const double step = entries[j + 1].value - entries[j].value;
        up = up && step >= 0.0;
        down = down && step <= 0.0;
        variation += std::abs(step);
    }
    if (up || down) return 0.0;  // monotone: zero by definition, exactly
    return variation / (hi - lo) - 1.0;
}

namespace {

// 64-bit engine outputs mapped without std::distributions, so results do not
// depend on the standard library implementation.
class DeRng {
  public:
    explicit DeRng(std::uint64_t seed) : engine_(seed) {}
    double unit() { return uniform_unit(engine_()); }
    int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace

DEResult differential_evolution(const std::function<double(const Eigen::VectorXd&)>& objective,
                                const Bounds& bounds, const DEConfig& cfg) {
    const Eigen::Index dim = bounds.lo.size();
    if (dim < 1 || bounds.hi.size() != dim)
        throw std::invalid_argument("differential_evolution: bad bounds");
    for (Eigen::Index d = 0; d < dim; ++d)
        if (!(bounds.lo(d) < bounds.hi(d)))
            throw std::invalid_argument("differential_evolution: empty box");
    if (cfg.population < 4)
        throw std::invalid_argument("differential_evolution: population must be >= 4");

    DeRng rng(cfg.seed);
    const int np = cfg.population;
    std::vector<Eigen::VectorXd> pop(np);
    Eigen::VectorXd fitness(np);
    DEResult result;
    result.best = Eigen::VectorXd::Zero(dim);
    result.value = std::numeric_limits<double>::infinity();

    for (int i = 0; i < np; ++i) {
        pop[i].resize(dim);
        for (Eigen::Index d = 0; d < dim; ++d)
            pop[i](d) = bounds.lo(d) + rng.unit() * (bounds.hi(d) - bounds.lo(d));
        fitness(i) = objective(pop[i]);
        ++result.evaluations;
        if (fitness(i) < result.value) {
            result.value = fitness(i);
            result.best = pop[i];
        }
    }

    std::vector<Eigen::VectorXd> trials(np);
    for (int gen = 0; gen < cfg.max_generations; ++gen) {
        for (int i = 0; i < np; ++i) {
            int a = rng.below(np);
            while (a == i) a = rng.below(np);
            int b = rng.below(np);
            while (b == i || b == a) b = rng.below(np);
            int c = rng.below(np);
            while (c == i || c == a || c == b) c = rng.below(np);

            Eigen::VectorXd mutant = pop[a] + cfg.f_mut * (pop[b] - pop[c]);
            for (Eigen::Index d = 0; d < dim; ++d)
                mutant(d) = std::clamp(mutant(d), bounds.lo(d), bounds.hi(d));

            const int forced = rng.below(static_cast<int>(dim));
            Eigen::VectorXd trial = pop[i];
            for (Eigen::Index d = 0; d < dim; ++d)
                if (d == forced || rng.unit() < cfg.cr) trial(d) = mutant(d);
            trials[i] = std::move(trial);
        }
        // Synchronous selection: all trials are judged against this generation.
        for (int i = 0; i < np; ++i) {
            const double f = objective(trials[i]);
            ++result.evaluations;
            if (f <= fitness(i)) {
                fitness(i) = f;
                pop[i] = std::move(trials[i]);
            }
            if (f < result.value) {
                result.value = f;
                result.best = pop[i];
            }
        }
    }
    return result;
}

Bounds default_collapse_bounds(DriftKind drift) {
    Bounds b;
    if (drift == DriftKind::Const) {
        b.lo.resize(2);
        b.hi.resize(2);
        b.lo << 0.05, 0.2;
        b.hi << 5.0, 6.0;
        return b;
    }
    const double l1 = drift == DriftKind::LinearL ? 1.0 : 20.0;
    b.lo.resize(3);
    b.hi.resize(3);
    b.lo << 0.05, 0.2, -l1;
    b.hi << 5.0, 6.0, l1;
    return b;
}

CollapseResult collapse(const std::vector<CollapsePoint>& points, const AnsatzSpec& ansatz,
                        const DEConfig& cfg) {
    if (points.empty()) throw std::invalid_argument("collapse: no points");
    const Bounds bounds =
        ansatz.bounds.lo.size() > 0 ? ansatz.bounds : default_collapse_bounds(ansatz.drift);
    if (!(bounds.lo(0) > 0.0))
        throw std::invalid_argument("collapse: nu lower bound must be positive");
    const bool has_drift = ansatz.drift != DriftKind::Const;
    const Eigen::Index want = has_drift ? 3 : 2;
    if (bounds.lo.size() != want)
        throw std::invalid_argument("collapse: bounds dimension does not match drift");

    auto to_params = [&](const Eigen::VectorXd& v) {
        AnsatzParams p;
        p.nu = v(0);
        p.lambda0 = v(1);
        p.lambda1 = has_drift ? v(2) : 0.0;
        return p;
    };
    auto objective = [&](const Eigen::VectorXd& v) {
        return cost_function(points, ansatz.correlation, ansatz.drift, to_params(v));
    };

    CollapseResult result;
    result.seed = cfg.seed;
    result.cost = std::numeric_limits<double>::infinity();
    const int restarts = std::max(1, cfg.restarts);
    for (int r = 0; r < restarts; ++r) {
        DEConfig run_cfg = cfg;
        run_cfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
        const DEResult run = differential_evolution(objective, bounds, run_cfg);
        result.evaluations += run.evaluations;
        if (run.value < result.cost) {
            result.cost = run.value;
            result.best = to_params(run.best);
        }
    }

    result.theta_sorted.reserve(points.size());
    for (const auto& p : points)
        result.theta_sorted.emplace_back(
            theta(p.lambda, p.L, ansatz.correlation, ansatz.drift, result.best), p.value, p.L);
    std::sort(result.theta_sorted.begin(), result.theta_sorted.end());
    return result;
}

std::vector<std::pair<int, double>> critical_lambda_table(
    const std::vector<CollapsePoint>& points, DriftKind drift, const AnsatzParams& params) {
    std::set<int> sizes;
    for (const auto& p : points) sizes.insert(p.L);
    std::vector<std::pair<int, double>> table;
    table.reserve(sizes.size());
    for (int L : sizes)
        table.emplace_back(L, critical_lambda(L, drift, params.lambda0, params.lambda1));
    return table;
}

std::pair<double, double> susceptibility_fit_window(double alpha) {
    struct Anchor {
        double alpha, lo, hi;
    };
    static constexpr Anchor anchors[] = {{0.0, 2.2, 3.6}, {0.3, 1.75, 3.15}, {0.7, 1.3, 2.7}};
    if (alpha <= anchors[0].alpha) return {anchors[0].lo, anchors[0].hi};
    for (int k = 0; k + 1 < 3; ++k) {
        const Anchor &a = anchors[k], &b = anchors[k + 1];
        if (alpha <= b.alpha) {
            const double t = (alpha - a.alpha) / (b.alpha - a.alpha);
            return {a.lo + t * (b.lo - a.lo), a.hi + t * (b.hi - a.hi)};
        }
    }
    return {anchors[2].lo, anchors[2].hi};
}

}  // namespace gaa
