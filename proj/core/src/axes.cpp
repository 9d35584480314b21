#include "slpca/axes.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace slpca {

namespace {

constexpr double kOrthoTol = 1e-10;

void check_symmetric(const Eigen::MatrixXd& A, const char* what) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square");
  }
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * scale) {
    throw std::runtime_error(std::string(what) +
                             ": matrix is not symmetric; the pencil would have a "
                             "complex spectrum");
  }
}

/// Flips each row so its largest-magnitude entry is positive; with equal
/// magnitudes the lowest index wins. Keeps eigenvector output reproducible.
void apply_sign_convention(Eigen::MatrixXd& rows) {
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      const double mag = std::abs(rows(i, j));
      if (mag > best) {
        best = mag;
        arg = j;
      }
    }
    if (rows(i, arg) < 0.0) {
      rows.row(i) = -rows.row(i);
    }
  }
}

double max_orthonormality_defect(const Eigen::MatrixXd& rows) {
  Eigen::MatrixXd gram = rows * rows.transpose();
  gram.diagonal().array() -= 1.0;
  return gram.rows() == 0 ? 0.0 : gram.cwiseAbs().maxCoeff();
}

}  // namespace

std::string to_string(AxesSource source) {
  switch (source) {
    case AxesSource::pca: return "pca";
    case AxesSource::contiguity: return "contiguity";
    case AxesSource::user: return "user";
  }
  throw std::logic_error("unknown AxesSource");
}

AxesSource axes_source_from_string(const std::string& name) {
  if (name == "pca") return AxesSource::pca;
  if (name == "contiguity") return AxesSource::contiguity;
  if (name == "user") return AxesSource::user;
  throw std::invalid_argument("unknown axes source '" + name + "'");
}

ProjectionBasis::ProjectionBasis(Eigen::MatrixXd axes, AxesSource source)
    : axes_(std::move(axes)), source_(source) {
  if (axes_.rows() < 1 || axes_.cols() < 1) {
    throw std::invalid_argument("ProjectionBasis: need at least one axis");
  }
  if (axes_.rows() > axes_.cols()) {
    throw std::invalid_argument("ProjectionBasis: more axes than dimensions");
  }
  if (max_orthonormality_defect(axes_) > kOrthoTol) {
    throw std::invalid_argument("ProjectionBasis: axes are not orthonormal");
  }
}

CompletedBasis::CompletedBasis(Eigen::MatrixXd P, Eigen::MatrixXd Pbar)
    : P_(std::move(P)), Pbar_(std::move(Pbar)) {
  const Eigen::Index p = P_.cols();
  if (P_.rows() < 1) {
    throw std::invalid_argument("CompletedBasis: need at least one axis");
  }
  if (Pbar_.cols() != p || P_.rows() + Pbar_.rows() != p) {
    throw std::invalid_argument("CompletedBasis: P and Pbar must stack to p x p");
  }
  if (max_orthonormality_defect(Q()) > kOrthoTol) {
    throw std::invalid_argument("CompletedBasis: stacked basis is not unitary");
  }
}

Eigen::MatrixXd CompletedBasis::Q() const {
  Eigen::MatrixXd q(p(), p());
  q.topRows(d()) = P_;
  q.bottomRows(p() - d()) = Pbar_;
  return q;
}

ContiguityMatrix knn_contiguity(const DataMatrix& data, int k) {
  const Eigen::Index n = data.n();
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("knn_contiguity: k must be in [1, n-1], got k=" +
                                std::to_string(k) + " with n=" + std::to_string(n));
  }

  ContiguityMatrix M;
  M.n = n;
  M.k = k;
  M.neighbors.resize(static_cast<std::size_t>(n));

  std::vector<std::pair<double, Eigen::Index>> dist;
  dist.reserve(static_cast<std::size_t>(n - 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    dist.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d2 = (data.values().row(i) - data.values().row(j)).squaredNorm();
      dist.emplace_back(d2, j);
    }
    // ties on distance resolved by the lower index
    std::sort(dist.begin(), dist.end());
    auto& nbrs = M.neighbors[static_cast<std::size_t>(i)];
    nbrs.resize(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) {
      nbrs[static_cast<std::size_t>(r)] = dist[static_cast<std::size_t>(r)].second;
    }
    std::sort(nbrs.begin(), nbrs.end());
  }
  return M;
}

Eigen::MatrixXd local_covariance(const DataMatrix& data, const ContiguityMatrix& M,
                                 int k) {
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  if (M.n != n) {
    throw std::invalid_argument("local_covariance: contiguity matrix built for n=" +
                                std::to_string(M.n) + ", data has n=" +
                                std::to_string(n));
  }
  if (k < 1) {
    throw std::invalid_argument("local_covariance: k must be positive");
  }

  // plain accumulation, same order as the brute-force definition
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd diff(p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j : M.neighbors[static_cast<std::size_t>(i)]) {
      diff = data.values().row(i) - data.values().row(j);
      for (Eigen::Index a = 0; a < p; ++a) {
        for (Eigen::Index b = 0; b < p; ++b) {
          acc(a, b) += diff(a) * diff(b);
        }
      }
    }
  }
  const double norm = 1.0 / (2.0 * static_cast<double>(k) * static_cast<double>(n));
  return norm * acc;
}

ProjectionBasis contiguity_axes(const Eigen::MatrixXd& Vstar, const Eigen::MatrixXd& V,
                                int d_max) {
  check_symmetric(Vstar, "contiguity_axes (V*)");
  check_symmetric(V, "contiguity_axes (V)");
  const Eigen::Index p = V.rows();
  if (Vstar.rows() != p) {
    throw std::invalid_argument("contiguity_axes: V and V* sizes differ");
  }
  if (d_max < 1 || d_max > p) {
    throw std::invalid_argument("contiguity_axes: d_max must be in [1, p]");
  }

  const Eigen::MatrixXd Vs = 0.5 * (Vstar + Vstar.transpose());
  const Eigen::MatrixXd Vt = 0.5 * (V + V.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> probe(Vs);
  if (probe.info() != Eigen::Success ||
      probe.eigenvalues().minCoeff() <= 1e-10 * Vs.trace()) {
    throw std::runtime_error(
        "contiguity_axes: local covariance V* is singular; a larger neighbor "
        "count k usually fixes this");
  }

  // V a = lambda V* a via Cholesky reduction of the definite pencil
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Vt, Vs);
  if (ges.info() != Eigen::Success) {
    throw std::runtime_error("contiguity_axes: generalized eigen-solve failed");
  }

  // eigenvalues come back ascending; keep the top d_max, largest first
  Eigen::MatrixXd picked(p, d_max);
  for (int c = 0; c < d_max; ++c) {
    picked.col(c) = ges.eigenvectors().col(p - 1 - c);
  }

  // The pencil eigenvectors are V*-orthogonal, not Euclidean-orthonormal;
  // re-orthonormalize in eigenvalue order so the basis invariant holds.
  for (int c = 0; c < d_max; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      picked.col(c) -= picked.col(prev).dot(picked.col(c)) * picked.col(prev);
    }
    const double norm = picked.col(c).norm();
    if (norm < 1e-12) {
      throw std::runtime_error("contiguity_axes: eigenvectors are linearly dependent");
    }
    picked.col(c) /= norm;
  }

  Eigen::MatrixXd rows = picked.transpose();
  apply_sign_convention(rows);
  return ProjectionBasis(std::move(rows), AxesSource::contiguity);
}

ProjectionBasis pca_axes(const Eigen::MatrixXd& V, int d_max) {
  check_symmetric(V, "pca_axes");
  const Eigen::Index p = V.rows();
  if (d_max < 1 || d_max > p) {
    throw std::invalid_argument("pca_axes: d_max must be in [1, p]");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (V + V.transpose()));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("pca_axes: eigen-solve failed");
  }

  Eigen::MatrixXd rows(d_max, p);
  for (int c = 0; c < d_max; ++c) {
    rows.row(c) = es.eigenvectors().col(p - 1 - c).transpose();
  }
  apply_sign_convention(rows);
  return ProjectionBasis(std::move(rows), AxesSource::pca);
}

CompletedBasis complete_basis(const Eigen::MatrixXd& axes) {
  const Eigen::Index d = axes.rows();
  const Eigen::Index p = axes.cols();
  if (d < 1 || d > p) {
    throw std::invalid_argument("complete_basis: need 1 <= d <= p");
  }
  if (max_orthonormality_defect(axes) > 1e-8) {
    throw std::invalid_argument("complete_basis: input axes are not orthonormal");
  }

  if (d == p) {
    return CompletedBasis(axes, Eigen::MatrixXd(0, p));
  }

  // Householder QR of the axis columns; the trailing columns of the
  // orthogonal factor span the complement, deterministically.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(axes.transpose());
  Eigen::MatrixXd Qfull = qr.householderQ() * Eigen::MatrixXd::Identity(p, p);
  Eigen::MatrixXd complement = Qfull.rightCols(p - d).transpose();
  apply_sign_convention(complement);
  return CompletedBasis(axes, std::move(complement));
}

CompletedBasis complete_basis(const ProjectionBasis& axes, Eigen::Index d) {
  if (d < 1 || d > axes.count()) {
    throw std::invalid_argument("complete_basis: d out of range of available axes");
  }
  return complete_basis(axes.axes().topRows(d));
}

Projected project(const DataMatrix& data, const CompletedBasis& basis) {
  if (data.p() != basis.p()) {
    throw std::invalid_argument("project: data has " + std::to_string(data.p()) +
                                " columns, basis expects " + std::to_string(basis.p()));
  }
  return Projected{data.values() * basis.P().transpose(),
                   data.values() * basis.Pbar().transpose()};
}

Eigen::MatrixXd axis_correlations(const Eigen::MatrixXd& X, const DataMatrix& data) {
  const Eigen::Index n = data.n();
  if (X.rows() != n) {
    throw std::invalid_argument("axis_correlations: row counts differ");
  }
  if (n < 2) {
    throw std::invalid_argument("axis_correlations: need n >= 2");
  }

  auto centered_or_throw = [n](const Eigen::MatrixXd& m, Eigen::Index col,
                               const std::string& label) {
    Eigen::VectorXd c = m.col(col).array() - m.col(col).mean();
    if (m.col(col).maxCoeff() == m.col(col).minCoeff()) {
      throw std::runtime_error("axis_correlations: " + label + " has zero variance");
    }
    return c;
  };

  Eigen::MatrixXd corr(X.cols(), data.p());
  for (Eigen::Index i = 0; i < X.cols(); ++i) {
    Eigen::VectorXd xi = centered_or_throw(X, i, "projected coordinate " +
                                                   std::to_string(i + 1));
    const double sx = xi.norm();
    for (Eigen::Index j = 0; j < data.p(); ++j) {
      Eigen::VectorXd yj = centered_or_throw(
          data.values(), j,
          "column '" + data.column_names()[static_cast<std::size_t>(j)] + "'");
      corr(i, j) = xi.dot(yj) / (sx * yj.norm());
    }
  }
  return corr;
}

}  // namespace slpca
