#pragma once

#include <Eigen/Core>

#include <cstdint>

#include "slpca/data.hpp"

namespace slpca {

/// The one-dimensional test manifold x -> (x, sin x, cos x).
Eigen::Vector3d helix_point(double x);

/// Height of the two-dimensional test surface at (x, y):
/// cos(pi r / 3) (1 - exp(-64 r^2)) exp(0.2 r) with r = sqrt(x^2 + y^2).
double hat_height(double x, double y);

/// n rows (x, sin x + e1, cos x + e2) with x ~ N(0, sigma_x^2) and
/// e ~ N(0, sigma^2). The seed stream is consumed in a fixed order: all x
/// draws first, then the noise row by row, so changing sigma leaves the x
/// sequence untouched. Columns are named x, y, z.
DataMatrix gen_helix(Eigen::Index n, double sigma_x, double sigma, std::uint64_t seed);

/// n rows (x, y, f(x, y) + e) with (x, y) ~ N(0, sigma_x) and e ~ N(0,
/// sigma^2); same stream order as gen_helix (all coordinate pairs first,
/// then the noise). sigma_x must be symmetric positive definite.
DataMatrix gen_hat(Eigen::Index n, const Eigen::Matrix2d& sigma_x, double sigma,
                   std::uint64_t seed);

}  // namespace slpca
