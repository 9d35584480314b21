#include "slpca/simulate.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "slpca/rng.hpp"

namespace slpca {

Eigen::Vector3d helix_point(double x) {
  return {x, std::sin(x), std::cos(x)};
}

double hat_height(double x, double y) {
  const double r = std::hypot(x, y);
  return std::cos(std::numbers::pi * r / 3.0) * (1.0 - std::exp(-64.0 * r * r)) *
         std::exp(0.2 * r);
}

DataMatrix gen_helix(Eigen::Index n, double sigma_x, double sigma, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("gen_helix: need n >= 1");
  }
  NormalStream stream(seed);

  Eigen::VectorXd xs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    xs(i) = sigma_x * stream.next();
  }

  Eigen::MatrixXd rows(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    rows(i, 0) = xs(i);
    rows(i, 1) = std::sin(xs(i)) + sigma * stream.next();
    rows(i, 2) = std::cos(xs(i)) + sigma * stream.next();
  }
  return DataMatrix(std::move(rows), {"x", "y", "z"});
}

DataMatrix gen_hat(Eigen::Index n, const Eigen::Matrix2d& sigma_x, double sigma,
                   std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("gen_hat: need n >= 1");
  }
  if ((sigma_x - sigma_x.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, sigma_x.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("gen_hat: covariance must be symmetric");
  }
  Eigen::LLT<Eigen::Matrix2d> llt(sigma_x);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("gen_hat: covariance must be positive definite");
  }
  const Eigen::Matrix2d chol = llt.matrixL();

  NormalStream stream(seed);
  Eigen::MatrixXd xy(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector2d draw{stream.next(), stream.next()};
    xy.row(i) = (chol * draw).transpose();
  }

  Eigen::MatrixXd rows(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    rows(i, 0) = xy(i, 0);
    rows(i, 1) = xy(i, 1);
    rows(i, 2) = hat_height(xy(i, 0), xy(i, 1)) + sigma * stream.next();
  }
  return DataMatrix(std::move(rows), {"x", "y", "z"});
}

}  // namespace slpca
