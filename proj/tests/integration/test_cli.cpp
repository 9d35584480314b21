// End-to-end checks of the slpca binary: every subcommand, the documented
// exit codes, and the on-disk formats.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "slpca/slpca.hpp"

namespace {

using namespace slpca;

std::string cli_path() { return SLPCA_CLI_PATH; }

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run(const std::string& args) {
  static int counter = 0;
  const std::string out_file =
      ::testing::TempDir() + "slpca_cli_out_" + std::to_string(counter++) + ".txt";
  const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  result.stdout_text = ss.str();
  std::remove(out_file.c_str());
  return result;
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + "slpca_" + name; }

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    helix_csv_ = tmp("helix.csv");
    hat_csv_ = tmp("hat.csv");
    ASSERT_EQ(run("simulate helix --n 1000 --sigma-x 3 --sigma 1 --seed 7 --out " +
                  helix_csv_).exit_code,
              0);
    ASSERT_EQ(run("simulate hat --n 1000 --sigma 0.5 --seed 7 --out " + hat_csv_)
                  .exit_code,
              0);
  }

  static std::string helix_csv_;
  static std::string hat_csv_;
};

std::string CliTest::helix_csv_;
std::string CliTest::hat_csv_;

double count_lines(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  double lines = 0;
  while (std::getline(in, line)) ++lines;
  return lines;
}

TEST_F(CliTest, SimulateWritesCsvWithHeader) {
  EXPECT_EQ(count_lines(helix_csv_), 1001);
  std::ifstream in(helix_csv_);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "x,y,z");

  auto data = load_csv(helix_csv_);
  EXPECT_EQ(data.n(), 1000);
  EXPECT_EQ(data.p(), 3);
}

TEST_F(CliTest, SimulateIsMissingOutputPathError) {
  auto result = run("simulate helix --n 10 --seed 1");
  EXPECT_EQ(result.exit_code, 2);
}

TEST_F(CliTest, SimulateRequiresSeed) {
  auto result = run("simulate helix --n 10 --out " + tmp("nope.csv"));
  EXPECT_EQ(result.exit_code, 2);
}

TEST_F(CliTest, SimulateIsDeterministic) {
  const std::string a = tmp("det_a.csv"), b = tmp("det_b.csv");
  ASSERT_EQ(run("simulate hat --n 50 --seed 11 --out " + a).exit_code, 0);
  ASSERT_EQ(run("simulate hat --n 50 --seed 11 --out " + b).exit_code, 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_FALSE(sa.str().empty());
}

TEST_F(CliTest, AxesContiguityFindsTheLatentCoordinate) {
  const std::string axes_path = tmp("helix_axes.json");
  auto result =
      run("axes --input " + helix_csv_ + " --method contiguity --k 3 --out " + axes_path);
  ASSERT_EQ(result.exit_code, 0) << result.stdout_text;

  auto axes = load_axes(axes_path);
  EXPECT_EQ(axes.axes.source(), AxesSource::contiguity);
  ASSERT_EQ(axes.axes.p(), 3);

  auto data = load_csv(helix_csv_);
  auto centered = center_standardize(data, false).first;
  Eigen::MatrixXd X = centered.values() * axes.axes.axes().topRows(1).transpose();
  Eigen::MatrixXd corr = axis_correlations(X, data);
  EXPECT_GT(std::abs(corr(0, 0)), 0.99) << result.stdout_text;
}

TEST_F(CliTest, AxesRejectsTooLargeK) {
  auto result = run("axes --input " + helix_csv_ + " --method contiguity --k 1000 --out " +
                    tmp("bad_axes.json"));
  EXPECT_EQ(result.exit_code, 2);
}

TEST_F(CliTest, FitHelixSplineReportsSaneResidualVariance) {
  const std::string model_path = tmp("helix_m12.json");
  auto result = run("fit --input " + helix_csv_ +
                    " --method contiguity --k 3 --d 1 --kind spline --m 12 --out " +
                    model_path);
  ASSERT_EQ(result.exit_code, 0) << result.stdout_text;

  auto model = load_model(model_path);
  EXPECT_EQ(model.d(), 1);
  EXPECT_EQ(model.kind(), RegressionKind::spline);
  EXPECT_GT(model.sigma2, 0.85);
  EXPECT_LT(model.sigma2, 1.10);
}

TEST_F(CliTest, FitHatLinearResidualVariance) {
  const std::string model_path = tmp("hat_linear.json");
  auto result = run("fit --input " + hat_csv_ +
                    " --method contiguity --k 2 --d 2 --kind linear --out " + model_path);
  ASSERT_EQ(result.exit_code, 0) << result.stdout_text;
  auto model = load_model(model_path);
  EXPECT_GT(model.sigma2, 1.00);
  EXPECT_LT(model.sigma2, 1.45);
}

TEST_F(CliTest, FitFromAxesFileMatchesInlineEstimation) {
  const std::string axes_path = tmp("axes_reuse.json");
  ASSERT_EQ(run("axes --input " + helix_csv_ + " --method contiguity --k 3 --out " +
                axes_path).exit_code,
            0);
  const std::string a = tmp("fit_inline.json"), b = tmp("fit_from_file.json");
  ASSERT_EQ(run("fit --input " + helix_csv_ +
                " --method contiguity --k 3 --d 1 --kind spline --m 10 --out " + a)
                .exit_code,
            0);
  ASSERT_EQ(run("fit --input " + helix_csv_ + " --axes-file " + axes_path +
                " --d 1 --kind spline --m 10 --out " + b)
                .exit_code,
            0);
  auto ma = load_model(a);
  auto mb = load_model(b);
  EXPECT_EQ(ma.sigma2, mb.sigma2);
  EXPECT_TRUE((ma.basis.P().array() == mb.basis.P().array()).all());
}

TEST_F(CliTest, SelectPicksDimensionTwoOnHatData) {
  const std::string report_path = tmp("hat_report.tsv");
  const std::string model_path = tmp("hat_best.json");
  auto result = run("select --input " + hat_csv_ +
                    " --method contiguity --k 2 --d-max 2 --m-list 6,7,8,9 --report " +
                    report_path + " --out " + model_path);
  ASSERT_EQ(result.exit_code, 0) << result.stdout_text;

  auto model = load_model(model_path);
  EXPECT_EQ(model.d(), 2);
  EXPECT_EQ(model.kind(), RegressionKind::spline);

  // report: header + 2 dims x (1 linear + 4 spline) rows
  std::ifstream report(report_path);
  std::string line;
  std::getline(report, line);
  EXPECT_EQ(line, "d\tkind\tm\tgamma\tlog_likelihood\tbic\tsigma2\tstatus");
  int rows = 0;
  while (std::getline(report, line)) ++rows;
  EXPECT_EQ(rows, 10);
}

TEST_F(CliTest, SelectSingleCandidateGrid) {
  const std::string report_path = tmp("single_report.tsv");
  const std::string model_path = tmp("single_best.json");
  auto result = run("select --input " + helix_csv_ +
                    " --method contiguity --k 3 --d-max 1 --m-list 12 --no-linear"
                    " --report " + report_path + " --out " + model_path);
  ASSERT_EQ(result.exit_code, 0) << result.stdout_text;
  auto model = load_model(model_path);
  EXPECT_EQ(model.d(), 1);
  EXPECT_EQ(model.kind(), RegressionKind::spline);
}

TEST_F(CliTest, PredictOnTrainingDataMatchesResidualIdentity) {
  const std::string model_path = tmp("helix_for_predict.json");
  ASSERT_EQ(run("fit --input " + helix_csv_ +
                " --method contiguity --k 3 --d 1 --kind spline --m 12 --out " +
                model_path).exit_code,
            0);
  const std::string out_path = tmp("predictions.csv");
  auto result =
      run("predict --input " + helix_csv_ + " --model " + model_path + " --out " + out_path);
  ASSERT_EQ(result.exit_code, 0) << result.stdout_text;

  auto model = load_model(model_path);
  auto table = load_csv(out_path);
  ASSERT_EQ(table.p(), 4);  // 3 reconstructed columns + residual norm
  EXPECT_EQ(table.column_names().back(), "residual_norm");

  const double msr = table.values().col(3).array().square().sum() /
                     static_cast<double>(table.n());
  const double expected = 2.0 * model.sigma2;  // (p - d) sigma2
  EXPECT_NEAR(msr, expected, 1e-9 * expected);
}

TEST_F(CliTest, PredictRejectsWrongWidthCsv) {
  const std::string model_path = tmp("helix_for_width.json");
  ASSERT_EQ(run("fit --input " + helix_csv_ +
                " --method pca --d 1 --kind linear --out " + model_path).exit_code,
            0);
  const std::string narrow = tmp("narrow.csv");
  {
    std::ofstream out(narrow);
    out << "a,b\n1,2\n3,4\n";
  }
  auto result = run("predict --input " + narrow + " --model " + model_path + " --out " +
                    tmp("unused.csv"));
  EXPECT_EQ(result.exit_code, 2);
}

TEST_F(CliTest, CurvesSumToPredictions) {
  const std::string model_path = tmp("hat_for_curves.json");
  ASSERT_EQ(run("fit --input " + hat_csv_ +
                " --method contiguity --k 2 --d 2 --kind spline --m 7 --out " +
                model_path).exit_code,
            0);
  const std::string curves_path = tmp("curves.tsv");
  auto result = run("curves --model " + model_path + " --grid 5 --out " + curves_path);
  ASSERT_EQ(result.exit_code, 0) << result.stdout_text;

  auto model = load_model(model_path);
  const auto& reg = std::get<AdditiveRegression>(model.regression);

  std::ifstream file(curves_path);
  std::string header;
  std::getline(file, header);
  EXPECT_EQ(header, "axis\tx\tc1");

  struct Row { int axis; double x; double c1; };
  std::vector<Row> rows;
  std::string line;
  while (std::getline(file, line)) {
    std::stringstream ss(line);
    Row row;
    ss >> row.axis >> row.x >> row.c1;
    rows.push_back(row);
  }
  ASSERT_EQ(rows.size(), 10u);  // 2 axes x 5 grid points

  // additivity: component(axis 1 at x1) + component(axis 2 at x2) + intercept
  // equals the full prediction at (x1, x2)
  const Row& r1 = rows[2];
  const Row& r2 = rows[7];
  ASSERT_EQ(r1.axis, 1);
  ASSERT_EQ(r2.axis, 2);
  Eigen::Vector2d point(r1.x, r2.x);
  const double direct = predict(reg, point)(0);
  EXPECT_NEAR(r1.c1 + r2.c1 + reg.intercept(0), direct, 1e-9 * std::max(1.0, std::abs(direct)));
}

TEST_F(CliTest, CurvesGridOneUsesTheMidpoint) {
  const std::string model_path = tmp("helix_for_midpoint.json");
  ASSERT_EQ(run("fit --input " + helix_csv_ +
                " --method contiguity --k 3 --d 1 --kind spline --m 9 --out " +
                model_path).exit_code,
            0);
  const std::string curves_path = tmp("curve_mid.tsv");
  ASSERT_EQ(run("curves --model " + model_path + " --grid 1 --out " + curves_path)
                .exit_code,
            0);
  EXPECT_EQ(count_lines(curves_path), 2);  // header + one row

  auto model = load_model(model_path);
  const auto& basis = std::get<AdditiveRegression>(model.regression).bases[0];
  std::ifstream file(curves_path);
  std::string line;
  std::getline(file, line);
  std::getline(file, line);
  std::stringstream ss(line);
  int axis;
  double x;
  ss >> axis >> x;
  EXPECT_DOUBLE_EQ(x, 0.5 * (basis.lo + basis.hi));
}

TEST_F(CliTest, CurvesOnLinearModelIsModelError) {
  const std::string model_path = tmp("linear_for_curves.json");
  ASSERT_EQ(run("fit --input " + helix_csv_ +
                " --method pca --d 1 --kind linear --out " + model_path).exit_code,
            0);
  auto result = run("curves --model " + model_path + " --out " + tmp("no_curves.tsv"));
  EXPECT_EQ(result.exit_code, 1);
  }

TEST_F(CliTest, SampleIsDeterministicAndRefitIsClose) {
  const std::string model_path = tmp("helix_gen.json");
  ASSERT_EQ(run("fit --input " + helix_csv_ +
                " --method contiguity --k 3 --d 1 --kind spline --m 12 --out " +
                model_path).exit_code,
            0);

  const std::string a = tmp("sample_a.csv"), b = tmp("sample_b.csv");
  ASSERT_EQ(run("sample --model " + model_path + " --n 1000 --seed 5 --out " + a)
                .exit_code,
            0);
  ASSERT_EQ(run("sample --model " + model_path + " --n 1000 --seed 5 --out " + b)
                .exit_code,
            0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());

  // a fresh fit on the sampled data recovers the generating noise level
  const std::string refit_path = tmp("helix_refit.json");
  ASSERT_EQ(run("fit --input " + a +
                " --method contiguity --k 3 --d 1 --kind spline --m 12 --out " +
                refit_path).exit_code,
            0);
  auto generating = load_model(model_path);
  auto refit = load_model(refit_path);
  EXPECT_NEAR(refit.sigma2, generating.sigma2, 0.15 * generating.sigma2);
}

TEST_F(CliTest, SampleRequiresSeed) {
  const std::string model_path = tmp("helix_seedless.json");
  ASSERT_EQ(run("fit --input " + helix_csv_ +
                " --method pca --d 1 --kind linear --out " + model_path).exit_code,
            0);
  auto result = run("sample --model " + model_path + " --n 10 --out " + tmp("s.csv"));
  EXPECT_EQ(result.exit_code, 2);
}

TEST_F(CliTest, SampleRecordsSeedInModelFile) {
  const std::string model_path = tmp("helix_record.json");
  ASSERT_EQ(run("fit --input " + helix_csv_ +
                " --method pca --d 1 --kind spline --m 9 --out " + model_path).exit_code,
            0);
  const std::string recorded = tmp("helix_recorded.json");
  ASSERT_EQ(run("sample --model " + model_path + " --n 10 --seed 21 --out " +
                tmp("drawn.csv") + " --record-model " + recorded).exit_code,
            0);
  auto model = load_model(recorded);
  ASSERT_TRUE(model.sample_seed.has_value());
  EXPECT_EQ(*model.sample_seed, 21u);
}

TEST_F(CliTest, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
}

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(run("--help").exit_code, 0);
  EXPECT_EQ(run("fit --help").exit_code, 0);
}
