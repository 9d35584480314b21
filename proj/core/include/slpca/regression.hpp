#pragma once

#include <Eigen/Core>

#include <variant>
#include <vector>

#include "slpca/bspline.hpp"

namespace slpca {

/// z = intercept + coefficients' x.
struct LinearRegression {
  Eigen::VectorXd intercept;     // length p-d
  Eigen::MatrixXd coefficients;  // d x (p-d)
};

/// z = intercept + sum_j blocks[j]' s_j(x_j), with s_j the B-spline basis of
/// axis j. Identifiability: the first basis coefficient of every block is
/// pinned to zero and absorbed by the intercept; predictions do not depend
/// on that choice.
struct AdditiveRegression {
  Eigen::VectorXd intercept;            // length p-d
  std::vector<Eigen::MatrixXd> blocks;  // d entries, each m x (p-d); row 0 is zero
  std::vector<BSplineBasis> bases;      // d entries
};

using Regression = std::variant<LinearRegression, AdditiveRegression>;

/// Least squares of Z on X with intercept. Errors when the centered design
/// is rank deficient (smallest singular value below 1e-10 of the largest).
LinearRegression fit_linear(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z);

/// Additive B-spline least squares with m basis functions per axis. Bases are
/// clamped uniform over the observed range of each column of X. Solved by
/// column-pivoted QR of the constrained design; a rank-deficient design
/// (too many control points for the data) is an error.
AdditiveRegression fit_additive_spline(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                                       int m, int degree);

/// Same fit against caller-supplied bases (one per column of X).
AdditiveRegression fit_additive_spline(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                                       std::vector<BSplineBasis> bases);

Eigen::VectorXd predict(const LinearRegression& reg, const Eigen::VectorXd& x);
Eigen::VectorXd predict(const AdditiveRegression& reg, const Eigen::VectorXd& x);
Eigen::VectorXd predict(const Regression& reg, const Eigen::VectorXd& x);

/// Row-wise prediction: returns the n x (p-d) matrix of fitted values.
Eigen::MatrixXd predict_rows(const Regression& reg, const Eigen::MatrixXd& X);

/// The additive component of axis j (0-based) on a grid, without intercept:
/// row g holds blocks[j]' s_j(grid[g]).
Eigen::MatrixXd component_curve(const AdditiveRegression& reg, int j,
                                const Eigen::VectorXd& grid);

}  // namespace slpca
