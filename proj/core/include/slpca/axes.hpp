#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "slpca/data.hpp"

namespace slpca {

enum class AxesSource { pca, contiguity, user };

std::string to_string(AxesSource source);
AxesSource axes_source_from_string(const std::string& name);

/// Row-wise k-nearest-neighbor graph: neighbors[i] holds the indices of the
/// k points closest to point i (self excluded), in ascending index order.
/// Distance ties are broken by the lower index.
struct ContiguityMatrix {
  Eigen::Index n = 0;
  int k = 0;
  std::vector<std::vector<Eigen::Index>> neighbors;
};

/// Ordered orthonormal directions in R^p, stored as rows. Construction
/// checks pairwise orthogonality and unit norms to 1e-10.
class ProjectionBasis {
public:
  ProjectionBasis(Eigen::MatrixXd axes, AxesSource source);

  const Eigen::MatrixXd& axes() const { return axes_; }
  Eigen::Index count() const { return axes_.rows(); }
  Eigen::Index p() const { return axes_.cols(); }
  AxesSource source() const { return source_; }

private:
  Eigen::MatrixXd axes_;
  AxesSource source_;
};

/// First d axes plus an orthonormal complement of R^p. The stacked matrix
/// Q = (P over Pbar) is unitary to 1e-10, checked at construction.
class CompletedBasis {
public:
  CompletedBasis(Eigen::MatrixXd P, Eigen::MatrixXd Pbar);

  const Eigen::MatrixXd& P() const { return P_; }        // d x p
  const Eigen::MatrixXd& Pbar() const { return Pbar_; }  // (p-d) x p
  Eigen::MatrixXd Q() const;                             // p x p, P rows first
  Eigen::Index d() const { return P_.rows(); }
  Eigen::Index p() const { return P_.cols(); }

private:
  Eigen::MatrixXd P_;
  Eigen::MatrixXd Pbar_;
};

struct Projected {
  Eigen::MatrixXd X;  // n x d
  Eigen::MatrixXd Z;  // n x (p-d)
};

/// Exact k-nearest-neighbor graph by full distance enumeration.
ContiguityMatrix knn_contiguity(const DataMatrix& data, int k);

/// Local covariance V* = 1/(2kn) sum_ij m_ij (y_i - y_j)(y_i - y_j)'.
Eigen::MatrixXd local_covariance(const DataMatrix& data, const ContiguityMatrix& M,
                                 int k);

/// Axes from the symmetric-definite pencil (V*, V): eigenvectors of V*^-1 V
/// with the largest eigenvalues, re-orthonormalized in eigenvalue order.
/// The reduction factors V* = L L' and solves the symmetric problem of
/// L^-1 V L^-T, so the spectrum is real by construction.
ProjectionBasis contiguity_axes(const Eigen::MatrixXd& Vstar, const Eigen::MatrixXd& V,
                                int d_max);

/// Eigenvectors of the covariance matrix, by decreasing eigenvalue.
ProjectionBasis pca_axes(const Eigen::MatrixXd& V, int d_max);

/// Completes d orthonormal axes (rows of `axes`) to a full basis. The
/// complement is the trailing block of a Householder QR of the axis columns,
/// so it is deterministic.
CompletedBasis complete_basis(const Eigen::MatrixXd& axes);
CompletedBasis complete_basis(const ProjectionBasis& axes, Eigen::Index d);

/// X = Y P', Z = Y Pbar'.
Projected project(const DataMatrix& data, const CompletedBasis& basis);

/// Pearson correlations: entry (i, j) correlates projected coordinate i with
/// original variable j.
Eigen::MatrixXd axis_correlations(const Eigen::MatrixXd& X, const DataMatrix& data);

}  // namespace slpca
