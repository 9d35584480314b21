#include "slpca/selection.hpp"

#include <algorithm>
#include <stdexcept>

namespace slpca {

namespace {

ProjectionBasis estimate_axes(const DataMatrix& centered, const ModelFamily& family) {
  const Eigen::MatrixXd V = total_covariance(centered);
  if (family.source == AxesSource::pca) {
    return pca_axes(V, family.d_max);
  }
  const ContiguityMatrix M = knn_contiguity(centered, family.k);
  const Eigen::MatrixXd Vstar = local_covariance(centered, M, family.k);
  return contiguity_axes(Vstar, V, family.d_max);
}

}  // namespace

SelectionOutcome select(const DataMatrix& Y, const ModelFamily& family) {
  if (family.d_max < 1 || family.d_max >= Y.p()) {
    throw std::invalid_argument("select: d_max must be in [1, p-1]");
  }
  if (!family.include_linear && family.spline_m.empty()) {
    throw std::invalid_argument("select: the candidate family is empty");
  }

  std::vector<int> ms = family.spline_m;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  auto [centered, centering] = center_standardize(Y, family.standardize);
  const ProjectionBasis axes = estimate_axes(centered, family);

  SelectionOutcome outcome;
  const int p = static_cast<int>(Y.p());

  struct Candidate {
    int d;
    RegressionSpec spec;
  };
  std::vector<Candidate> candidates;
  for (int d = 1; d <= family.d_max; ++d) {
    if (family.include_linear) {
      candidates.push_back({d, RegressionSpec{RegressionKind::linear, 0, family.degree, {}}});
    }
    for (int m : ms) {
      candidates.push_back({d, RegressionSpec{RegressionKind::spline, m, family.degree, {}}});
    }
  }

  for (const auto& cand : candidates) {
    SelectionRow row;
    row.d = cand.d;
    row.kind = cand.spec.kind;
    row.m = cand.spec.kind == RegressionKind::spline ? cand.spec.m : 0;
    try {
      row.gamma = parameter_count(cand.d, p, cand.spec.kind, cand.spec.m);
      const SlpcaModel model = fit_prepared(Y, centering, complete_basis(axes, cand.d),
                                            cand.spec, family.source);
      row.sigma2 = model.sigma2;
      if (!model.degenerate()) {
        row.log_lik = log_likelihood(model, Y);
        row.bic = bic(*row.log_lik, row.gamma, static_cast<double>(Y.n()));
      }
    } catch (const std::exception& err) {
      row.error = err.what();
    }
    outcome.report.rows.push_back(std::move(row));
  }

  // smallest BIC wins; ties prefer fewer parameters, then lower dimension
  for (std::size_t i = 0; i < outcome.report.rows.size(); ++i) {
    const auto& row = outcome.report.rows[i];
    if (!row.ok() || !row.bic) continue;
    if (!outcome.report.selected) {
      outcome.report.selected = i;
      continue;
    }
    const auto& best = outcome.report.rows[*outcome.report.selected];
    if (*row.bic < *best.bic ||
        (*row.bic == *best.bic &&
         (row.gamma < best.gamma || (row.gamma == best.gamma && row.d < best.d)))) {
      outcome.report.selected = i;
    }
  }

  if (outcome.report.selected) {
    const auto& best = outcome.report.rows[*outcome.report.selected];
    RegressionSpec spec{best.kind, best.m, family.degree, {}};
    outcome.best = fit_prepared(Y, centering, complete_basis(axes, best.d), spec,
                                family.source);
  }
  return outcome;
}

}  // namespace slpca
