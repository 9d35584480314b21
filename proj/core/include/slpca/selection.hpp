#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slpca/model.hpp"

namespace slpca {

/// The candidate grid compared by BIC: one axis estimate shared by all
/// candidates, dimensions 1..d_max, and for each dimension a linear map
/// and/or additive splines with each control-point count in spline_m.
struct ModelFamily {
  AxesSource source = AxesSource::pca;
  int k = 3;  // neighbor count when source == contiguity
  int d_max = 1;
  bool include_linear = true;
  std::vector<int> spline_m;
  int degree = 3;
  bool standardize = false;
};

struct SelectionRow {
  int d = 0;
  RegressionKind kind = RegressionKind::linear;
  int m = 0;  // 0 for linear candidates
  int gamma = 0;
  std::optional<double> log_lik;  // absent for degenerate or failed fits
  std::optional<double> bic;
  std::optional<double> sigma2;
  std::string error;  // empty when the fit succeeded

  bool ok() const { return error.empty(); }
};

/// Rows in (d, kind, m) order; `selected` indexes the minimal-BIC row
/// (ties broken by smaller gamma, then smaller d). Rows whose fit failed or
/// degenerated carry no BIC and are never selected.
struct SelectionReport {
  std::vector<SelectionRow> rows;
  std::optional<std::size_t> selected;
};

struct SelectionOutcome {
  SelectionReport report;
  std::optional<SlpcaModel> best;
};

/// Fits every candidate in the family and picks the BIC minimizer.
/// Individual fit failures become error rows; axis estimation failures are
/// fatal since every candidate shares the axes.
SelectionOutcome select(const DataMatrix& Y, const ModelFamily& family);

}  // namespace slpca
