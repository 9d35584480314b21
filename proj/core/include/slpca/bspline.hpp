#pragma once

#include <Eigen/Core>

#include <vector>

namespace slpca {

/// Clamped B-spline basis on [lo, hi] with uniformly spaced interior knots.
/// The knot vector has length num_basis + degree + 1; the first and last
/// degree+1 knots repeat the interval endpoints.
struct BSplineBasis {
  int degree = 3;
  int num_basis = 0;  // m, the number of basis functions
  Eigen::VectorXd knots;
  double lo = 0.0;
  double hi = 1.0;
};

/// Builds the clamped uniform basis. Requires m >= degree + 1 and lo < hi.
BSplineBasis make_basis(int degree, int m, double lo, double hi);

/// All m basis values at x via the Cox-de Boor recursion. x outside [lo, hi]
/// is clamped to the interval, so evaluation is total. Values are in [0, 1]
/// and sum to 1.
Eigen::VectorXd eval_basis(const BSplineBasis& basis, double x);

/// Regression design: a leading ones column, then one block of num_basis
/// columns per coordinate holding the basis values of that column of X.
/// Every row sums to 1 + d by the partition of unity.
Eigen::MatrixXd design_matrix(const std::vector<BSplineBasis>& bases,
                              const Eigen::MatrixXd& X);

}  // namespace slpca
