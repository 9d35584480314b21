// slpca: semi-linear principal component analysis from the command line.
//
// Subcommands: simulate, axes, fit, select, predict, curves, sample.
// Exit codes: 0 success, 1 numerical/model error, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "slpca/slpca.hpp"

namespace {

using namespace slpca;

struct CommonInput {
  std::string path;
  bool no_header = false;
  std::string delimiter = ",";

  CsvOptions csv_options() const {
    if (delimiter.size() != 1) {
      throw std::invalid_argument("--delimiter must be a single character");
    }
    return CsvOptions{!no_header, delimiter[0]};
  }
};

void add_input_flags(CLI::App* cmd, CommonInput* input) {
  cmd->add_option("--input", input->path, "input CSV file")->required();
  cmd->add_flag("--no-header", input->no_header, "input CSV has no header row");
  cmd->add_option("--delimiter", input->delimiter, "CSV delimiter (',' or ';')");
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void print_column_variances(const DataMatrix& data) {
  std::cout << "columns:";
  for (const auto& name : data.column_names()) std::cout << ' ' << name;
  std::cout << "\nvariances:";
  for (Eigen::Index j = 0; j < data.p(); ++j) {
    const double mean = data.values().col(j).mean();
    const double var = (data.values().col(j).array() - mean).square().sum() /
                       static_cast<double>(data.n());
    std::printf(" %.6g", var);
  }
  std::cout << '\n';
}

void print_correlations(const Eigen::MatrixXd& corr,
                        const std::vector<std::string>& names) {
  std::printf("%-8s", "");
  for (const auto& name : names) std::printf(" %12s", name.c_str());
  std::printf("\n");
  for (Eigen::Index i = 0; i < corr.rows(); ++i) {
    std::printf("Proj_%-3lld", static_cast<long long>(i + 1));
    for (Eigen::Index j = 0; j < corr.cols(); ++j) {
      std::printf(" %12.10f", corr(i, j));
    }
    std::printf("\n");
  }
}

struct AxesChoice {
  std::string method = "pca";
  int k = 3;
  std::string axes_file;
};

void add_axes_flags(CLI::App* cmd, AxesChoice* choice) {
  cmd->add_option("--method", choice->method, "axis estimation method")
      ->check(CLI::IsMember({"pca", "contiguity"}));
  cmd->add_option("--k", choice->k, "neighbor count for contiguity analysis");
  cmd->add_option("--axes-file", choice->axes_file,
                  "reuse axes from a previous 'slpca axes' run");
}

/// Estimates (or loads) at least d_max axes for the centered data.
ProjectionBasis resolve_axes(const AxesChoice& choice, const DataMatrix& centered,
                             int d_max) {
  if (!choice.axes_file.empty()) {
    AxesFile file = load_axes(choice.axes_file);
    if (file.axes.p() != centered.p()) {
      throw std::invalid_argument("axes file dimension does not match the data");
    }
    if (file.axes.count() < d_max) {
      throw std::invalid_argument("axes file holds fewer axes than requested d");
    }
    return file.axes;
  }
  const Eigen::MatrixXd V = total_covariance(centered);
  if (choice.method == "pca") {
    return pca_axes(V, d_max);
  }
  const ContiguityMatrix M = knn_contiguity(centered, choice.k);
  return contiguity_axes(local_covariance(centered, M, choice.k), V, d_max);
}

void report_fit(const SlpcaModel& model, const DataMatrix& data,
                const Eigen::MatrixXd& X) {
  const int gamma = parameter_count(static_cast<int>(model.d()),
                                    static_cast<int>(model.p()), model.kind(),
                                    model.kind() == RegressionKind::spline
                                        ? static_cast<int>(std::get<AdditiveRegression>(
                                                               model.regression)
                                                               .blocks[0]
                                                               .rows())
                                        : 0);
  std::printf("d: %lld\nkind: %s\n", static_cast<long long>(model.d()),
              to_string(model.kind()).c_str());
  std::printf("gamma: %d\n", gamma);
  std::printf("sigma2: %.6g\n", model.sigma2);
  if (model.degenerate()) {
    std::printf("log_likelihood: NA (degenerate model)\nbic: NA\n");
  } else {
    const double loglik = log_likelihood(model, data);
    std::printf("log_likelihood: %.6f\n", loglik);
    std::printf("bic: %.6f\n", bic(loglik, gamma, static_cast<double>(data.n())));
  }
  std::printf("projected variances:");
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double mean = X.col(j).mean();
    std::printf(" %.6g",
                (X.col(j).array() - mean).square().sum() / static_cast<double>(X.rows()));
  }
  std::printf("\n");
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_simulate(const std::string& kind, Eigen::Index n, double sigma_x, double var_x,
                 double var_y, double cov_xy, double sigma, std::uint64_t seed,
                 const std::string& out) {
  DataMatrix data = [&] {
    if (kind == "helix") {
      return gen_helix(n, sigma_x, sigma, seed);
    }
    Eigen::Matrix2d cov;
    cov << var_x, cov_xy, cov_xy, var_y;
    return gen_hat(n, cov, sigma, seed);
  }();
  write_csv(out, data);
  std::printf("wrote %s: n=%lld p=%lld\n", out.c_str(), static_cast<long long>(data.n()),
              static_cast<long long>(data.p()));
  print_column_variances(data);
  return 0;
}

int cmd_axes(const CommonInput& input, const AxesChoice& choice, int d_max,
             bool standardize, const std::string& out) {
  const DataMatrix data = load_csv(input.path, input.csv_options());
  const int axes_count = d_max > 0 ? d_max : static_cast<int>(data.p());
  auto [centered, centering] = center_standardize(data, standardize);
  (void)centering;
  const ProjectionBasis axes = resolve_axes(choice, centered, axes_count);

  const Eigen::MatrixXd X = centered.values() * axes.axes().transpose();
  print_correlations(axis_correlations(X, data), data.column_names());
  std::printf("projected variances:");
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double mean = X.col(j).mean();
    std::printf(" %.6g",
                (X.col(j).array() - mean).square().sum() / static_cast<double>(X.rows()));
  }
  std::printf("\n");

  std::optional<int> k;
  if (axes.source() == AxesSource::contiguity) k = choice.k;
  save_axes(AxesFile{axes, k, standardize}, out);
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_fit(const CommonInput& input, const AxesChoice& choice, int d,
            const std::string& kind, int m, int degree, bool standardize,
            const std::string& out) {
  const DataMatrix data = load_csv(input.path, input.csv_options());
  if (d < 1 || d >= data.p()) {
    throw std::invalid_argument("--d must be in [1, p-1]");
  }
  auto [centered, centering] = center_standardize(data, standardize);
  (void)centering;
  const ProjectionBasis axes = resolve_axes(choice, centered, d);

  RegressionSpec spec;
  spec.kind = regression_kind_from_string(kind);
  spec.m = m;
  spec.degree = degree;
  const SlpcaModel model = fit(data, axes, d, spec, standardize);

  save_model(model, out);
  const Eigen::MatrixXd X =
      model.centering.apply(data.values()) * model.basis.P().transpose();
  report_fit(model, data, X);
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_select(const CommonInput& input, const AxesChoice& choice, int d_max,
               const std::vector<int>& m_list, bool no_linear, int degree,
               bool standardize, const std::string& report_path,
               const std::string& out) {
  const DataMatrix data = load_csv(input.path, input.csv_options());

  ModelFamily family;
  family.source = axes_source_from_string(choice.method);
  family.k = choice.k;
  family.d_max = d_max;
  family.include_linear = !no_linear;
  family.spline_m = m_list;
  family.degree = degree;
  family.standardize = standardize;

  const SelectionOutcome outcome = select(data, family);

  std::ofstream report(report_path);
  if (!report) {
    throw std::invalid_argument("cannot open '" + report_path + "' for writing");
  }
  report << "d\tkind\tm\tgamma\tlog_likelihood\tbic\tsigma2\tstatus\n";
  for (const auto& row : outcome.report.rows) {
    report << row.d << '\t' << to_string(row.kind) << '\t' << row.m << '\t' << row.gamma
           << '\t' << (row.log_lik ? format_real(*row.log_lik) : "NA") << '\t'
           << (row.bic ? format_real(*row.bic) : "NA") << '\t'
           << (row.sigma2 ? format_real(*row.sigma2) : "NA") << '\t'
           << (row.ok() ? "ok" : row.error) << '\n';
  }
  if (!report) {
    throw std::runtime_error("write to '" + report_path + "' failed");
  }

  if (!outcome.report.selected) {
    throw std::runtime_error("select: every candidate fit failed or degenerated");
  }
  const auto& best = outcome.report.rows[*outcome.report.selected];
  std::printf("selected: d=%d kind=%s", best.d, to_string(best.kind).c_str());
  if (best.kind == RegressionKind::spline) std::printf(" m=%d", best.m);
  std::printf(" bic=%.6f sigma2=%.6g\n", *best.bic, *best.sigma2);

  save_model(*outcome.best, out);
  std::printf("wrote %s and %s\n", report_path.c_str(), out.c_str());
  return 0;
}

int cmd_predict(const CommonInput& input, const std::string& model_path,
                const std::string& out) {
  const SlpcaModel model = load_model(model_path);
  const DataMatrix data = load_csv(input.path, input.csv_options());
  const DataMatrix rebuilt = reconstruct(model, data);

  Eigen::MatrixXd table(data.n(), data.p() + 1);
  table.leftCols(data.p()) = rebuilt.values();
  double total = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double norm = (data.values().row(i) - rebuilt.values().row(i)).norm();
    table(i, data.p()) = norm;
    total += norm * norm;
  }
  std::vector<std::string> names;
  for (const auto& name : data.column_names()) names.push_back(name + "_hat");
  names.push_back("residual_norm");
  write_csv(out, DataMatrix(table, names));
  std::printf("mean squared residual: %.17g\n", total / static_cast<double>(data.n()));
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_curves(const std::string& model_path, int grid_size, const std::string& out) {
  const SlpcaModel model = load_model(model_path);
  const auto* reg = std::get_if<AdditiveRegression>(&model.regression);
  if (reg == nullptr) {
    throw std::runtime_error(
        "curves: the model has a linear restoration map, which has no component "
        "curves; fit a spline model instead");
  }
  if (grid_size < 1) {
    throw std::invalid_argument("--grid must be at least 1");
  }

  std::ofstream file(out);
  if (!file) {
    throw std::invalid_argument("cannot open '" + out + "' for writing");
  }
  file << "axis\tx";
  for (Eigen::Index c = 0; c < model.p() - model.d(); ++c) {
    file << "\tc" << (c + 1);
  }
  file << '\n';
  for (std::size_t j = 0; j < reg->bases.size(); ++j) {
    const auto& basis = reg->bases[j];
    Eigen::VectorXd grid =
        grid_size == 1
            ? Eigen::VectorXd::Constant(1, 0.5 * (basis.lo + basis.hi))
            : Eigen::VectorXd::LinSpaced(grid_size, basis.lo, basis.hi);
    const Eigen::MatrixXd curve = component_curve(*reg, static_cast<int>(j), grid);
    for (Eigen::Index g = 0; g < grid.size(); ++g) {
      file << (j + 1) << '\t' << format_real(grid(g));
      for (Eigen::Index c = 0; c < curve.cols(); ++c) {
        file << '\t' << format_real(curve(g, c));
      }
      file << '\n';
    }
  }
  if (!file) {
    throw std::runtime_error("write to '" + out + "' failed");
  }
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_sample(const std::string& model_path, Eigen::Index n, std::uint64_t seed,
               const std::string& out, const std::string& record_model) {
  SlpcaModel model = load_model(model_path);
  const DataMatrix drawn = sample(model, n, seed);
  write_csv(out, drawn);
  std::printf("wrote %s: n=%lld p=%lld seed=%llu\n", out.c_str(),
              static_cast<long long>(drawn.n()), static_cast<long long>(drawn.p()),
              static_cast<unsigned long long>(seed));
  if (!record_model.empty()) {
    model.sample_seed = seed;
    save_model(model, record_model);
    std::printf("wrote %s\n", record_model.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-linear principal component analysis"};
  app.require_subcommand(1);

  // simulate
  std::string sim_kind;
  Eigen::Index sim_n = 1000;
  double sim_sigma_x = 3.0, sim_var_x = 1.8, sim_var_y = 1.5, sim_cov_xy = 0.0;
  double sim_sigma = -1.0;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "generate a synthetic data set");
  simulate_cmd->add_option("kind", sim_kind, "generator: helix or hat")
      ->required()
      ->check(CLI::IsMember({"helix", "hat"}));
  simulate_cmd->add_option("--n", sim_n, "number of points");
  simulate_cmd->add_option("--sigma-x", sim_sigma_x,
                           "helix: sd of the latent coordinate (default 3)");
  simulate_cmd->add_option("--var-x", sim_var_x, "hat: variance of x (default 1.8)");
  simulate_cmd->add_option("--var-y", sim_var_y, "hat: variance of y (default 1.5)");
  simulate_cmd->add_option("--cov-xy", sim_cov_xy, "hat: covariance of (x, y)");
  simulate_cmd->add_option("--sigma", sim_sigma,
                           "noise sd (default 1 for helix, 0.5 for hat)");
  simulate_cmd->add_option("--seed", sim_seed, "random seed")->required();
  simulate_cmd->add_option("--out", sim_out, "output CSV path")->required();

  // axes
  CommonInput axes_input;
  AxesChoice axes_choice;
  int axes_dmax = 0;
  bool axes_standardize = false;
  std::string axes_out;
  auto* axes_cmd = app.add_subcommand("axes", "estimate projection axes");
  add_input_flags(axes_cmd, &axes_input);
  add_axes_flags(axes_cmd, &axes_choice);
  axes_cmd->add_option("--d-max", axes_dmax, "number of axes (default: p)");
  axes_cmd->add_flag("--standardize", axes_standardize, "standardize columns first");
  axes_cmd->add_option("--out", axes_out, "output axes file")->required();

  // fit
  CommonInput fit_input;
  AxesChoice fit_choice;
  int fit_d = 1, fit_m = 12, fit_degree = 3;
  std::string fit_kind = "spline";
  bool fit_standardize = false;
  std::string fit_out;
  auto* fit_cmd = app.add_subcommand("fit", "fit a model of fixed dimension");
  add_input_flags(fit_cmd, &fit_input);
  add_axes_flags(fit_cmd, &fit_choice);
  fit_cmd->add_option("--d", fit_d, "model dimension")->required();
  fit_cmd->add_option("--kind", fit_kind, "restoration map: linear or spline")
      ->check(CLI::IsMember({"linear", "spline"}));
  fit_cmd->add_option("--m", fit_m, "control points per axis (spline)");
  fit_cmd->add_option("--degree", fit_degree, "spline degree");
  fit_cmd->add_flag("--standardize", fit_standardize, "standardize columns first");
  fit_cmd->add_option("--out", fit_out, "output model file")->required();

  // select
  CommonInput select_input;
  AxesChoice select_choice;
  int select_dmax = 0, select_degree = 3;
  std::vector<int> select_m;
  bool select_no_linear = false, select_standardize = false;
  std::string select_report, select_out;
  auto* select_cmd = app.add_subcommand("select", "BIC model selection over a grid");
  add_input_flags(select_cmd, &select_input);
  add_axes_flags(select_cmd, &select_choice);
  select_cmd->add_option("--d-max", select_dmax, "largest dimension to try")->required();
  select_cmd->add_option("--m-list", select_m, "control-point counts to try")
      ->required()
      ->delimiter(',');
  select_cmd->add_flag("--no-linear", select_no_linear, "skip linear candidates");
  select_cmd->add_option("--degree", select_degree, "spline degree");
  select_cmd->add_flag("--standardize", select_standardize, "standardize columns first");
  select_cmd->add_option("--report", select_report, "output TSV report")->required();
  select_cmd->add_option("--out", select_out, "output model file for the winner")
      ->required();

  // predict
  CommonInput predict_input;
  std::string predict_model, predict_out;
  auto* predict_cmd =
      app.add_subcommand("predict", "reconstruct points through a fitted model");
  add_input_flags(predict_cmd, &predict_input);
  predict_cmd->add_option("--model", predict_model, "model file")->required();
  predict_cmd->add_option("--out", predict_out, "output CSV path")->required();

  // curves
  std::string curves_model, curves_out;
  int curves_grid = 100;
  auto* curves_cmd =
      app.add_subcommand("curves", "export per-axis regression component curves");
  curves_cmd->add_option("--model", curves_model, "model file")->required();
  curves_cmd->add_option("--grid", curves_grid, "grid points per axis (default 100)");
  curves_cmd->add_option("--out", curves_out, "output TSV path")->required();

  // sample
  std::string sample_model, sample_out, sample_record;
  Eigen::Index sample_n = 1000;
  std::uint64_t sample_seed = 0;
  auto* sample_cmd = app.add_subcommand("sample", "draw points from a fitted model");
  sample_cmd->add_option("--model", sample_model, "model file")->required();
  sample_cmd->add_option("--n", sample_n, "number of points");
  sample_cmd->add_option("--seed", sample_seed, "random seed")->required();
  sample_cmd->add_option("--out", sample_out, "output CSV path")->required();
  sample_cmd->add_option("--record-model", sample_record,
                         "also write the model with the sampling seed recorded");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate_cmd->parsed()) {
      if (sim_sigma < 0.0) sim_sigma = (sim_kind == "helix") ? 1.0 : 0.5;
      return cmd_simulate(sim_kind, sim_n, sim_sigma_x, sim_var_x, sim_var_y, sim_cov_xy,
                          sim_sigma, sim_seed, sim_out);
    }
    if (axes_cmd->parsed()) {
      return cmd_axes(axes_input, axes_choice, axes_dmax, axes_standardize, axes_out);
    }
    if (fit_cmd->parsed()) {
      return cmd_fit(fit_input, fit_choice, fit_d, fit_kind, fit_m, fit_degree,
                     fit_standardize, fit_out);
    }
    if (select_cmd->parsed()) {
      return cmd_select(select_input, select_choice, select_dmax, select_m,
                        select_no_linear, select_degree, select_standardize,
                        select_report, select_out);
    }
    if (predict_cmd->parsed()) {
      return cmd_predict(predict_input, predict_model, predict_out);
    }
    if (curves_cmd->parsed()) {
      return cmd_curves(curves_model, curves_grid, curves_out);
    }
    if (sample_cmd->parsed()) {
      return cmd_sample(sample_model, sample_n, sample_seed, sample_out, sample_record);
    }
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
