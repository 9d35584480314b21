#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slpca/axes.hpp"
#include "slpca/data.hpp"
#include "slpca/regression.hpp"

namespace slpca {

/// Fits with residual variance below this floor are flagged degenerate;
/// their likelihood and BIC are reported as not available.
inline constexpr double kDegenerateSigma2 = 1e-12;

enum class RegressionKind { linear, spline };

std::string to_string(RegressionKind kind);
RegressionKind regression_kind_from_string(const std::string& name);

/// How to estimate the restoration map of the orthogonal block.
struct RegressionSpec {
  RegressionKind kind = RegressionKind::spline;
  int m = 12;      // basis functions per axis (spline only)
  int degree = 3;  // spline degree
  /// When nonempty, reuse these bases instead of rebuilding them from the
  /// projected training range (one per axis). Used to refit against a
  /// previously fitted model's function family.
  std::vector<BSplineBasis> fixed_bases;
};

/// A fitted semi-linear model: orthonormal basis Q = (P over Pbar), latent
/// Gaussian N(mu_x, sigma_x) on the projected coordinates, restoration map
/// for the orthogonal block, isotropic residual variance sigma2, and the
/// centering applied to the training data.
struct SlpcaModel {
  CompletedBasis basis;
  Regression regression;
  Eigen::VectorXd mu_x;    // length d
  Eigen::MatrixXd sigma_x; // d x d
  double sigma2 = 0.0;
  CenteringInfo centering;
  std::vector<std::string> column_names;
  AxesSource axes_source = AxesSource::pca;
  Eigen::Index n_train = 0;
  /// Seed recorded when the model file was produced by a sampling run.
  std::optional<std::uint64_t> sample_seed;

  Eigen::Index d() const { return basis.d(); }
  Eigen::Index p() const { return basis.p(); }
  bool degenerate() const { return sigma2 < kDegenerateSigma2; }
  RegressionKind kind() const;
};

/// Gaussian maximum likelihood: mean and covariance with denominator n.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> mle_gaussian(const Eigen::MatrixXd& X);

/// sigma^2 = 1/(n (p-d)) sum_i ||z_i - zhat_i||^2. Errors when there is no
/// orthogonal block (p = d).
double residual_variance(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Zhat);

/// Sum over rows of the latent Gaussian log density plus the conditional
/// N(restoration(x), sigma2 I) log density of the orthogonal block; the
/// rotation Q has unit Jacobian so this is the density of the (centered)
/// data. When the model standardized its training data the log Jacobian of
/// the scaling is included, keeping values comparable in original units.
/// Errors on sigma2 below the degeneracy floor or singular sigma_x.
double log_likelihood(const SlpcaModel& model, const DataMatrix& Y);

/// Free parameters: d for mu_x, d(d+1)/2 for sigma_x, 1 for sigma2, p-d for
/// the intercept, plus d(p-d) coefficients for a linear map or d(m-1)(p-d)
/// for the constrained additive spline. For d = p only the Gaussian remains.
int parameter_count(int d, int p, RegressionKind kind, int m);

/// BIC = -2 log L + gamma log n, to be minimized. n is real-valued so the
/// penalty scale is explicit at call sites; pass the observation count.
double bic(double log_likelihood, int gamma, double n);

/// Full pipeline: center (optionally standardize), project on the first d
/// axes, fit the restoration map, estimate the Gaussian parameters.
SlpcaModel fit(const DataMatrix& Y, const ProjectionBasis& axes, int d,
               const RegressionSpec& spec, bool standardize);

/// Same, with the centering and completed basis supplied by the caller
/// instead of recomputed. This is the refit path for sampled data.
SlpcaModel fit_prepared(const DataMatrix& Y, CenteringInfo centering,
                        CompletedBasis basis, const RegressionSpec& spec,
                        AxesSource source);

/// yhat = uncenter((x | restoration(x)) Q) with x = P center(y). Idempotent;
/// the projection of the reconstruction equals the projection of the input.
DataMatrix reconstruct(const SlpcaModel& model, const DataMatrix& Y);

/// Draws x_i ~ N(mu_x, sigma_x), z_i = restoration(x_i) + N(0, sigma2 I),
/// and maps rows (x_i | z_i) Q back through the centering. The stream is
/// consumed in a fixed order: all latent draws first (row-major), then all
/// noise draws (row-major), so output is reproducible given the seed.
DataMatrix sample(const SlpcaModel& model, Eigen::Index n, std::uint64_t seed);

}  // namespace slpca
