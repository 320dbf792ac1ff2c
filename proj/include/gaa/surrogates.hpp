#pragma once

#include <Eigen/Dense>

#include <random>

namespace gaa {

// GOE draw: symmetric matrix with N(0,1) diagonal and N(0,1/2) off-diagonal
// entries. Gap-ratio and form-factor statistics are scale-invariant, so the
// overall normalization is immaterial here.
Eigen::MatrixXd goe_matrix(int dim, std::mt19937_64& rng);

// Uncorrelated-level surrogate: n i.i.d. uniform levels on [0, n], sorted,
// so the mean spacing is one (already "unfolded").
Eigen::VectorXd poisson_levels(int n, std::mt19937_64& rng);

}  // namespace gaa
