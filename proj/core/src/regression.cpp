#include "slpca/regression.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace slpca {

LinearRegression fit_linear(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (Z.rows() != n) {
    throw std::invalid_argument("fit_linear: X and Z row counts differ");
  }
  if (n <= d) {
    throw std::invalid_argument("fit_linear: need n > d");
  }

  Eigen::RowVectorXd mu_x = X.colwise().mean();
  Eigen::RowVectorXd mu_z = Z.colwise().mean();
  Eigen::MatrixXd Xc = X.rowwise() - mu_x;
  Eigen::MatrixXd Zc = Z.rowwise() - mu_z;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Xc);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-10 * sv(0)) {
    throw std::runtime_error("fit_linear: projected data is rank deficient");
  }

  LinearRegression reg;
  reg.coefficients = Xc.householderQr().solve(Zc);
  reg.intercept = mu_z.transpose() - reg.coefficients.transpose() * mu_x.transpose();
  return reg;
}

AdditiveRegression fit_additive_spline(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                                       int m, int degree) {
  std::vector<BSplineBasis> bases;
  bases.reserve(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    bases.push_back(make_basis(degree, m, X.col(j).minCoeff(), X.col(j).maxCoeff()));
  }
  return fit_additive_spline(X, Z, std::move(bases));
}

AdditiveRegression fit_additive_spline(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                                       std::vector<BSplineBasis> bases) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  if (Z.rows() != n) {
    throw std::invalid_argument("fit_additive_spline: X and Z row counts differ");
  }
  if (static_cast<Eigen::Index>(bases.size()) != d) {
    throw std::invalid_argument("fit_additive_spline: need one basis per axis");
  }
  Eigen::Index total_m = 0;
  for (const auto& basis : bases) total_m += basis.num_basis;
  if (n <= 1 + total_m) {
    throw std::invalid_argument("fit_additive_spline: need n > 1 + d*m observations");
  }

  const Eigen::MatrixXd raw = design_matrix(bases, X);

  // Each block's columns sum to the intercept column, so the raw design is
  // rank deficient. Drop the first column of every block; the dropped basis
  // function is absorbed by the intercept.
  const Eigen::Index cols = raw.cols() - d;
  Eigen::MatrixXd design(n, cols);
  design.col(0) = raw.col(0);
  Eigen::Index src = 1, dst = 1;
  for (const auto& basis : bases) {
    design.middleCols(dst, basis.num_basis - 1) = raw.middleCols(src + 1, basis.num_basis - 1);
    src += basis.num_basis;
    dst += basis.num_basis - 1;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < cols) {
    throw std::runtime_error(
        "fit_additive_spline: design matrix is rank deficient (too many control "
        "points for the data)");
  }
  const Eigen::MatrixXd beta = qr.solve(Z);

  AdditiveRegression reg;
  reg.intercept = beta.row(0).transpose();
  reg.blocks.reserve(static_cast<std::size_t>(d));
  Eigen::Index row = 1;
  for (const auto& basis : bases) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(basis.num_basis, Z.cols());
    block.bottomRows(basis.num_basis - 1) = beta.middleRows(row, basis.num_basis - 1);
    reg.blocks.push_back(std::move(block));
    row += basis.num_basis - 1;
  }
  reg.bases = std::move(bases);
  return reg;
}

Eigen::VectorXd predict(const LinearRegression& reg, const Eigen::VectorXd& x) {
  if (x.size() != reg.coefficients.rows()) {
    throw std::invalid_argument("predict: x has wrong dimension");
  }
  return reg.intercept + reg.coefficients.transpose() * x;
}

Eigen::VectorXd predict(const AdditiveRegression& reg, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != reg.bases.size()) {
    throw std::invalid_argument("predict: x has wrong dimension");
  }
  Eigen::VectorXd out = reg.intercept;
  for (std::size_t j = 0; j < reg.bases.size(); ++j) {
    out += reg.blocks[j].transpose() *
           eval_basis(reg.bases[j], x(static_cast<Eigen::Index>(j)));
  }
  return out;
}

Eigen::VectorXd predict(const Regression& reg, const Eigen::VectorXd& x) {
  return std::visit([&x](const auto& r) { return predict(r, x); }, reg);
}

Eigen::MatrixXd predict_rows(const Regression& reg, const Eigen::MatrixXd& X) {
  return std::visit(
      [&X](const auto& r) {
        Eigen::MatrixXd out(X.rows(), r.intercept.size());
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
          out.row(i) = predict(r, X.row(i).transpose()).transpose();
        }
        return out;
      },
      reg);
}

Eigen::MatrixXd component_curve(const AdditiveRegression& reg, int j,
                                const Eigen::VectorXd& grid) {
  if (j < 0 || static_cast<std::size_t>(j) >= reg.bases.size()) {
    throw std::invalid_argument("component_curve: axis index out of range");
  }
  const auto& basis = reg.bases[static_cast<std::size_t>(j)];
  const auto& block = reg.blocks[static_cast<std::size_t>(j)];
  Eigen::MatrixXd curve(grid.size(), block.cols());
  for (Eigen::Index g = 0; g < grid.size(); ++g) {
    curve.row(g) = (block.transpose() * eval_basis(basis, grid(g))).transpose();
  }
  return curve;
}

}  // namespace slpca
