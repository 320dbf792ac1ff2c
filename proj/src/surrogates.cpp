#include "gaa/surrogates.hpp"

#include <algorithm>
#include <cmath>

namespace gaa {

Eigen::MatrixXd goe_matrix(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double off_scale = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXd m(dim, dim);
    for (int j = 0; j < dim; ++j) {
        m(j, j) = normal(rng);
        for (int i = j + 1; i < dim; ++i) {
            const double v = off_scale * normal(rng);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

Eigen::VectorXd poisson_levels(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, static_cast<double>(n));
    Eigen::VectorXd levels(n);
    for (int i = 0; i < n; ++i) levels(i) = uni(rng);
    std::sort(levels.data(), levels.data() + n);
    return levels;
}

}  // namespace gaa
