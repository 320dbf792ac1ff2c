#include "gaa/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gaa {

void validate(const ModelParams& p) {
    if (p.L < 2) throw std::invalid_argument("L must be >= 2");
    if (p.N < 0 || p.N > p.L) throw std::invalid_argument("N must satisfy 0 <= N <= L");
    if (p.alpha < 0.0 || p.alpha >= 1.0)
        throw std::invalid_argument("alpha must satisfy 0 <= alpha < 1");
    if (p.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    if (!(p.q > 0.0)) throw std::invalid_argument("q must be positive");
}

unsigned long long binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    k = std::min(k, n - k);
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
    }
    return r;
}

double onsite_coefficient(int site, double alpha, double q, double phi) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("alpha must satisfy 0 <= alpha < 1");
    const double c = std::cos(2.0 * std::numbers::pi * q * static_cast<double>(site) + phi);
    return 2.0 * c / (1.0 - alpha * c);
}

Eigen::Index FockBasis::index_of(std::uint32_t state) const {
    auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || *it != state) return -1;
    return static_cast<Eigen::Index>(it - states.begin());
}

FockBasis enumerate_basis(int L, int N) {
    if (L < 1 || L > 30) throw std::invalid_argument("enumerate_basis: L must be in [1, 30]");
    if (N < 0 || N > L)
        throw std::invalid_argument("enumerate_basis: N must satisfy 0 <= N <= L");
    FockBasis basis;
    basis.L = L;
    basis.N = N;
    basis.states.reserve(binomial(L, N));
    if (N == 0) {
        basis.states.push_back(0);
        return basis;
    }
    const std::uint32_t limit = 1u << L;
    std::uint32_t v = (1u << N) - 1;  // lowest pattern with N bits set
    while (v < limit) {
        basis.states.push_back(v);
        // Gosper's hack: next integer with the same popcount.
        const std::uint32_t u = v & (~v + 1u);
        const std::uint32_t w = v + u;
        v = w | (((v ^ w) / u) >> 2);
    }
    return basis;
}

int adjacent_pair_count(std::uint32_t state, int L, Boundary boundary) {
    int count = std::popcount(state & (state >> 1));
    if (boundary == Boundary::Periodic) {
        count += static_cast<int>((state >> (L - 1)) & state & 1u);
    }
    return count;
}

Eigen::MatrixXd build_hamiltonian(const ModelParams& p, const FockBasis& basis) {
    validate(p);
    if (basis.L != p.L || basis.N != p.N)
        throw std::invalid_argument("build_hamiltonian: basis does not match params");

    const Eigen::Index dim = basis.size();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

    // Site potentials, shared across states.
    Eigen::VectorXd coeff(p.L);
    for (int site = 1; site <= p.L; ++site)
        coeff(site - 1) = onsite_coefficient(site, p.alpha, p.q, p.phi);

    const std::uint32_t wrap_pair = (1u << (p.L - 1)) | 1u;
    const std::uint32_t interior_mask = (1u << (p.L - 1)) - 2u;  // bits strictly between the ends

    for (Eigen::Index a = 0; a < dim; ++a) {
        const std::uint32_t s = basis.states[static_cast<std::size_t>(a)];

        double diag = p.V * adjacent_pair_count(s, p.L, p.boundary);
        for (std::uint32_t rest = s; rest != 0; rest &= rest - 1u)
            diag += p.lambda * coeff(std::countr_zero(rest));
        h(a, a) += diag;

        for (int i = 0; i + 1 < p.L; ++i) {
            const std::uint32_t pair = 3u << i;
            const std::uint32_t occ = s & pair;
            if (occ == 0 || occ == pair) continue;  // no hop: empty or blocked
            const Eigen::Index b = basis.index_of(s ^ pair);
            if (b > a) {
                h(a, b) += -p.t;
                h(b, a) += -p.t;
            }
        }
        if (p.boundary == Boundary::Periodic) {
            const std::uint32_t occ = s & wrap_pair;
            if (occ != 0 && occ != wrap_pair) {
                const Eigen::Index b = basis.index_of(s ^ wrap_pair);
                if (b > a) {
                    const double sign = (std::popcount(s & interior_mask) & 1) ? -1.0 : 1.0;
                    h(a, b) += -p.t * sign;
                    h(b, a) += -p.t * sign;
                }
            }
        }
    }
    return h;
}

Eigen::VectorXd build_perturbation(PerturbationKind kind, const ModelParams& p,
                                   const FockBasis& basis) {
    if (basis.L != p.L || basis.N != p.N)
        throw std::invalid_argument("build_perturbation: basis does not match params");
    const Eigen::Index dim = basis.size();
    Eigen::VectorXd d(dim);
    if (kind == PerturbationKind::LocalDensity) {
        const int site = half_filling(p.L);  // central site, 1-based
        const std::uint32_t bit = 1u << (site - 1);
        for (Eigen::Index a = 0; a < dim; ++a)
            d(a) = (basis.states[static_cast<std::size_t>(a)] & bit) ? 1.0 : 0.0;
    } else {
        for (Eigen::Index a = 0; a < dim; ++a)
            d(a) = adjacent_pair_count(basis.states[static_cast<std::size_t>(a)], p.L, p.boundary);
    }
    return d;
}

}  // namespace gaa
