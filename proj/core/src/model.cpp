#include "slpca/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "slpca/rng.hpp"

namespace slpca {

RegressionKind SlpcaModel::kind() const {
  return std::holds_alternative<LinearRegression>(regression) ? RegressionKind::linear
                                                              : RegressionKind::spline;
}

std::string to_string(RegressionKind kind) {
  return kind == RegressionKind::linear ? "linear" : "spline";
}

RegressionKind regression_kind_from_string(const std::string& name) {
  if (name == "linear") return RegressionKind::linear;
  if (name == "spline") return RegressionKind::spline;
  throw std::invalid_argument("unknown regression kind '" + name + "'");
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> mle_gaussian(const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.rows();
  if (n < 2) {
    throw std::invalid_argument("mle_gaussian: need n >= 2");
  }
  Eigen::VectorXd mu = X.colwise().mean();
  Eigen::MatrixXd centered = X.rowwise() - mu.transpose();
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(X.cols(), X.cols());
  sigma.selfadjointView<Eigen::Lower>().rankUpdate(centered.adjoint(),
                                                   1.0 / static_cast<double>(n));
  sigma.triangularView<Eigen::StrictlyUpper>() = sigma.adjoint();
  return {std::move(mu), std::move(sigma)};
}

double residual_variance(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Zhat) {
  if (Z.rows() != Zhat.rows() || Z.cols() != Zhat.cols()) {
    throw std::invalid_argument("residual_variance: shapes differ");
  }
  if (Z.cols() < 1) {
    throw std::invalid_argument(
        "residual_variance: no orthogonal block (p = d); the model degenerates to a "
        "pure Gaussian on the projected coordinates");
  }
  return (Z - Zhat).squaredNorm() /
         (static_cast<double>(Z.rows()) * static_cast<double>(Z.cols()));
}

double log_likelihood(const SlpcaModel& model, const DataMatrix& Y) {
  if (Y.p() != model.p()) {
    throw std::invalid_argument("log_likelihood: data has wrong dimension");
  }
  if (model.sigma2 < kDegenerateSigma2) {
    throw std::runtime_error(
        "log_likelihood: degenerate model (residual variance below 1e-12)");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(model.sigma_x);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("log_likelihood: singular latent covariance");
  }

  const Eigen::Index n = Y.n();
  const Eigen::Index d = model.d();
  const Eigen::Index q = model.p() - d;
  const double log2pi = std::log(2.0 * std::numbers::pi);

  double logdet_sigma_x = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    logdet_sigma_x += 2.0 * std::log(llt.matrixL()(i, i));
  }

  const Eigen::MatrixXd centered = model.centering.apply(Y.values());
  const Eigen::MatrixXd X = centered * model.basis.P().transpose();
  const Eigen::MatrixXd Z = centered * model.basis.Pbar().transpose();
  const Eigen::MatrixXd Zhat = predict_rows(model.regression, X);

  const Eigen::MatrixXd Xc = X.rowwise() - model.mu_x.transpose();
  // quadratic forms (x - mu)' Sigma^-1 (x - mu) via the Cholesky factor
  const Eigen::MatrixXd whitened = llt.matrixL().solve(Xc.transpose());
  const double x_quad = whitened.squaredNorm();
  const double z_quad = (Z - Zhat).squaredNorm();

  double loglik = -0.5 * static_cast<double>(n) *
                      (static_cast<double>(d) * log2pi + logdet_sigma_x) -
                  0.5 * x_quad;
  loglik += -0.5 * static_cast<double>(n) * static_cast<double>(q) *
                (log2pi + std::log(model.sigma2)) -
            0.5 * z_quad / model.sigma2;

  if (model.centering.standardized) {
    // density of the original-unit data: include the scaling Jacobian
    loglik -= static_cast<double>(n) * model.centering.scales.array().log().sum();
  }
  return loglik;
}

int parameter_count(int d, int p, RegressionKind kind, int m) {
  if (d < 1 || p < 1 || d > p) {
    throw std::invalid_argument("parameter_count: need 1 <= d <= p");
  }
  const int gaussian = d + d * (d + 1) / 2;
  if (d == p) {
    return gaussian;
  }
  int coeffs = 0;
  if (kind == RegressionKind::linear) {
    coeffs = d * (p - d);
  } else {
    if (m < 2) {
      throw std::invalid_argument("parameter_count: spline needs m >= 2");
    }
    coeffs = d * (m - 1) * (p - d);
  }
  return gaussian + 1 + (p - d) + coeffs;
}

double bic(double log_likelihood, int gamma, double n) {
  if (!(n >= 1.0)) {
    throw std::invalid_argument("bic: need n >= 1");
  }
  return -2.0 * log_likelihood + static_cast<double>(gamma) * std::log(n);
}

SlpcaModel fit(const DataMatrix& Y, const ProjectionBasis& axes, int d,
               const RegressionSpec& spec, bool standardize) {
  if (axes.p() != Y.p()) {
    throw std::invalid_argument("fit: axes dimension does not match the data");
  }
  if (d < 1 || d > axes.count()) {
    throw std::invalid_argument("fit: d out of range of available axes");
  }
  if (d >= Y.p()) {
    throw std::invalid_argument("fit: need d < p (no orthogonal block left)");
  }
  auto [centered, centering] = center_standardize(Y, standardize);
  (void)centered;
  return fit_prepared(Y, std::move(centering), complete_basis(axes, d), spec,
                      axes.source());
}

SlpcaModel fit_prepared(const DataMatrix& Y, CenteringInfo centering,
                        CompletedBasis basis, const RegressionSpec& spec,
                        AxesSource source) {
  if (basis.p() != Y.p()) {
    throw std::invalid_argument("fit_prepared: basis dimension does not match the data");
  }
  if (basis.d() >= Y.p()) {
    throw std::invalid_argument("fit_prepared: need d < p");
  }

  const Eigen::MatrixXd centered = centering.apply(Y.values());
  const Eigen::MatrixXd X = centered * basis.P().transpose();
  const Eigen::MatrixXd Z = centered * basis.Pbar().transpose();

  Regression regression;
  if (spec.kind == RegressionKind::linear) {
    regression = fit_linear(X, Z);
  } else if (!spec.fixed_bases.empty()) {
    regression = fit_additive_spline(X, Z, spec.fixed_bases);
  } else {
    regression = fit_additive_spline(X, Z, spec.m, spec.degree);
  }

  auto [mu_x, sigma_x] = mle_gaussian(X);
  const double sigma2 = residual_variance(Z, predict_rows(regression, X));

  return SlpcaModel{
      .basis = std::move(basis),
      .regression = std::move(regression),
      .mu_x = std::move(mu_x),
      .sigma_x = std::move(sigma_x),
      .sigma2 = sigma2,
      .centering = std::move(centering),
      .column_names = Y.column_names(),
      .axes_source = source,
      .n_train = Y.n(),
      .sample_seed = std::nullopt,
  };
}

DataMatrix reconstruct(const SlpcaModel& model, const DataMatrix& Y) {
  if (Y.p() != model.p()) {
    throw std::invalid_argument("reconstruct: data has " + std::to_string(Y.p()) +
                                " columns, model expects " + std::to_string(model.p()));
  }
  const Eigen::MatrixXd centered = model.centering.apply(Y.values());
  const Eigen::MatrixXd X = centered * model.basis.P().transpose();
  const Eigen::MatrixXd Zhat = predict_rows(model.regression, X);
  const Eigen::MatrixXd rebuilt = X * model.basis.P() + Zhat * model.basis.Pbar();
  return DataMatrix(model.centering.invert(rebuilt), Y.column_names());
}

DataMatrix sample(const SlpcaModel& model, Eigen::Index n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("sample: need n >= 1");
  }
  const Eigen::Index d = model.d();
  const Eigen::Index q = model.p() - d;

  // symmetric square root of sigma_x; tolerates a semi-definite covariance
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.sigma_x);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("sample: eigen-decomposition of sigma_x failed");
  }
  const Eigen::MatrixXd root = es.eigenvectors() *
                               es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                               es.eigenvectors().transpose();

  NormalStream stream(seed);
  Eigen::MatrixXd latent(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      latent(i, j) = stream.next();
    }
  }
  Eigen::MatrixXd X = (latent * root).rowwise() + model.mu_x.transpose();

  const double noise_sd = std::sqrt(std::max(model.sigma2, 0.0));
  Eigen::MatrixXd Z = predict_rows(model.regression, X);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < q; ++j) {
      Z(i, j) += noise_sd * stream.next();
    }
  }

  const Eigen::MatrixXd rows = X * model.basis.P() + Z * model.basis.Pbar();
  return DataMatrix(model.centering.invert(rows), model.column_names);
}

}  // namespace slpca
