#include "slpca/bspline.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace slpca {

BSplineBasis make_basis(int degree, int m, double lo, double hi) {
  if (degree < 0) {
    throw std::invalid_argument("make_basis: degree must be >= 0");
  }
  if (m < degree + 1) {
    throw std::invalid_argument("make_basis: need m >= degree + 1 (got m=" +
                                std::to_string(m) + ", degree=" +
                                std::to_string(degree) + ")");
  }
  if (!(lo < hi)) {
    throw std::invalid_argument("make_basis: empty interval [lo, hi]");
  }

  BSplineBasis basis;
  basis.degree = degree;
  basis.num_basis = m;
  basis.lo = lo;
  basis.hi = hi;
  basis.knots.resize(m + degree + 1);

  const int interior = m - degree - 1;
  const int spans = interior + 1;
  for (int i = 0; i <= degree; ++i) {
    basis.knots(i) = lo;
    basis.knots(m + i) = hi;
  }
  for (int i = 1; i <= interior; ++i) {
    basis.knots(degree + i) = lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(spans);
  }
  return basis;
}

Eigen::VectorXd eval_basis(const BSplineBasis& basis, double x) {
  const int deg = basis.degree;
  const int m = basis.num_basis;
  x = std::clamp(x, basis.lo, basis.hi);

  // knot span s with knots[s] <= x < knots[s+1]; x == hi lands in the last
  // nonempty span [knots[m-1], knots[m]]
  int span = deg;
  while (span < m - 1 && x >= basis.knots(span + 1)) {
    ++span;
  }

  // Cox-de Boor triangle over the deg+1 local basis functions
  Eigen::VectorXd local = Eigen::VectorXd::Zero(deg + 1);
  Eigen::VectorXd left(deg + 1), right(deg + 1);
  local(0) = 1.0;
  for (int j = 1; j <= deg; ++j) {
    left(j) = x - basis.knots(span + 1 - j);
    right(j) = basis.knots(span + j) - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double tmp = local(r) / (right(r + 1) + left(j - r));
      local(r) = saved + right(r + 1) * tmp;
      saved = left(j - r) * tmp;
    }
    local(j) = saved;
  }

  Eigen::VectorXd values = Eigen::VectorXd::Zero(m);
  values.segment(span - deg, deg + 1) = local;
  return values;
}

Eigen::MatrixXd design_matrix(const std::vector<BSplineBasis>& bases,
                              const Eigen::MatrixXd& X) {
  const Eigen::Index d = X.cols();
  if (static_cast<Eigen::Index>(bases.size()) != d) {
    throw std::invalid_argument("design_matrix: expected " + std::to_string(d) +
                                " bases, got " + std::to_string(bases.size()));
  }

  Eigen::Index width = 1;
  for (const auto& basis : bases) {
    width += basis.num_basis;
  }

  Eigen::MatrixXd design(X.rows(), width);
  design.col(0).setOnes();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    Eigen::Index offset = 1;
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto& basis = bases[static_cast<std::size_t>(j)];
      design.row(i).segment(offset, basis.num_basis) =
          eval_basis(basis, X(i, j)).transpose();
      offset += basis.num_basis;
    }
  }
  return design;
}

}  // namespace slpca
