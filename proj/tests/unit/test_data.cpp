#include "slpca/data.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace slpca;

namespace {

class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    path_ = ::testing::TempDir() + "slpca_data_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".csv";
    std::ofstream out(path_);
    out << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST(DataMatrix, RejectsBadShapesAndValues) {
  EXPECT_THROW(DataMatrix(Eigen::MatrixXd(0, 2), {"a", "b"}), std::invalid_argument);
  EXPECT_THROW(DataMatrix(Eigen::MatrixXd::Zero(2, 2), {"a"}), std::invalid_argument);
  EXPECT_THROW(DataMatrix(Eigen::MatrixXd::Zero(2, 2), {"a", "a"}), std::invalid_argument);
  Eigen::MatrixXd nan = Eigen::MatrixXd::Zero(2, 2);
  nan(1, 1) = std::nan("");
  EXPECT_THROW(DataMatrix(nan, {"a", "b"}), std::invalid_argument);
}

TEST(LoadCsv, ParsesWithoutHeader) {
  TempFile file("1,2\n3,4\n5,6\n");
  auto data = load_csv(file.path(), {.has_header = false});
  EXPECT_EQ(data.n(), 3);
  EXPECT_EQ(data.p(), 2);
  EXPECT_EQ(data.column_names()[0], "V1");
  EXPECT_EQ(data.column_names()[1], "V2");
  EXPECT_DOUBLE_EQ(data.values()(2, 1), 6.0);
}

TEST(LoadCsv, ParsesHeader) {
  TempFile file("x,y\n0,1\n");
  auto data = load_csv(file.path());
  EXPECT_EQ(data.n(), 1);
  EXPECT_EQ(data.p(), 2);
  EXPECT_EQ(data.column_names()[0], "x");
  EXPECT_EQ(data.column_names()[1], "y");
}

TEST(LoadCsv, RaggedRowReportsLocation) {
  TempFile file("1,2\n3\n");
  try {
    load_csv(file.path(), {.has_header = false});
    FAIL() << "expected ragged-row error";
  } catch (const std::invalid_argument& err) {
    EXPECT_NE(std::string(err.what()).find("line 2"), std::string::npos) << err.what();
  }
}

TEST(LoadCsv, BadCellReportsLocation) {
  TempFile file("1,2\n3,oops\n");
  try {
    load_csv(file.path(), {.has_header = false});
    FAIL() << "expected parse error";
  } catch (const std::invalid_argument& err) {
    const std::string what = err.what();
    EXPECT_NE(what.find("row 2"), std::string::npos) << what;
    EXPECT_NE(what.find("column 2"), std::string::npos) << what;
  }
}

TEST(LoadCsv, RejectsMissingEmptyAndNonFinite) {
  EXPECT_THROW(load_csv("/nonexistent/file.csv"), std::invalid_argument);
  TempFile empty("");
  EXPECT_THROW(load_csv(empty.path()), std::invalid_argument);
  TempFile header_only("x,y\n");
  EXPECT_THROW(load_csv(header_only.path()), std::invalid_argument);
  TempFile inf("1,inf\n");
  EXPECT_THROW(load_csv(inf.path(), {.has_header = false}), std::invalid_argument);
}

TEST(LoadCsv, SemicolonDelimiterAndCrlf) {
  TempFile file("a;b\r\n1.5;-2\r\n");
  auto data = load_csv(file.path(), {.has_header = true, .delimiter = ';'});
  EXPECT_EQ(data.p(), 2);
  EXPECT_DOUBLE_EQ(data.values()(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(data.values()(0, 1), -2.0);
}

TEST(WriteCsv, RoundTripsExactly) {
  Eigen::MatrixXd values = slpca::testing::random_matrix(7, 3, 11);
  values(0, 0) = 0.1;  // not exactly representable; must survive the trip
  DataMatrix data(values, {"a", "b", "c"});
  TempFile file("");
  write_csv(file.path(), data);
  auto back = load_csv(file.path());
  EXPECT_EQ(back.column_names(), data.column_names());
  EXPECT_TRUE((back.values().array() == data.values().array()).all());
}

TEST(CenterStandardize, TwoPointMeans) {
  Eigen::MatrixXd values(2, 2);
  values << 1, 10, 3, 30;
  auto [centered, info] = center_standardize(DataMatrix(values, {"a", "b"}), false);
  Eigen::MatrixXd expected(2, 2);
  expected << -1, -10, 1, 10;
  EXPECT_LT((centered.values() - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_DOUBLE_EQ(info.means(0), 2.0);
  EXPECT_DOUBLE_EQ(info.means(1), 20.0);
  EXPECT_FALSE(info.standardized);
}

TEST(CenterStandardize, CenteredInputIsUnchanged) {
  Eigen::MatrixXd values(4, 2);
  values << -1, -2, 1, 2, -3, -4, 3, 4;
  DataMatrix data(values, {"a", "b"});
  auto [centered, info] = center_standardize(data, false);
  EXPECT_LT((centered.values() - values).cwiseAbs().maxCoeff(), 1e-12);
  (void)info;
}

TEST(CenterStandardize, PopulationStandardDeviation) {
  // rows {0, 2}: mean 1, sd with denominator n is 1
  Eigen::MatrixXd values(2, 1);
  values << 0, 2;
  auto [standardized, info] = center_standardize(DataMatrix(values, {"a"}), true);
  EXPECT_DOUBLE_EQ(info.scales(0), 1.0);
  EXPECT_DOUBLE_EQ(standardized.values()(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(standardized.values()(1, 0), 1.0);
}

TEST(CenterStandardize, ZeroVarianceColumnIsAnError) {
  Eigen::MatrixXd values(3, 2);
  values << 1, 5, 2, 5, 3, 5;
  try {
    center_standardize(DataMatrix(values, {"a", "flat"}), true);
    FAIL() << "expected zero-variance error";
  } catch (const std::invalid_argument& err) {
    EXPECT_NE(std::string(err.what()).find("flat"), std::string::npos);
  }
}

TEST(CenterStandardize, InverseRecoversInputOnRandomMatrices) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    Eigen::MatrixXd values = slpca::testing::random_matrix(20, 4, seed);
    values.array() += 5.0;  // nonzero means
    DataMatrix data(values, {"a", "b", "c", "d"});
    for (bool standardize : {false, true}) {
      auto [transformed, info] = center_standardize(data, standardize);
      Eigen::MatrixXd back = info.invert(transformed.values());
      const double scale = values.cwiseAbs().maxCoeff();
      EXPECT_LT((back - values).cwiseAbs().maxCoeff(), 1e-10 * scale);
    }
  }
}

TEST(CenterStandardize, OutputColumnsHaveZeroMean) {
  Eigen::MatrixXd values = slpca::testing::random_matrix(50, 3, 42);
  values.col(1).array() += 100.0;
  auto [centered, info] = center_standardize(DataMatrix::with_default_names(values), true);
  (void)info;
  for (Eigen::Index j = 0; j < 3; ++j) {
    const double range = centered.values().col(j).maxCoeff() -
                         centered.values().col(j).minCoeff();
    EXPECT_LT(std::abs(centered.values().col(j).mean()), 1e-12 * std::max(1.0, range));
  }
}

TEST(TotalCovariance, TwoPointExample) {
  Eigen::MatrixXd values(2, 2);
  values << 1, 0, -1, 0;
  Eigen::MatrixXd cov = total_covariance(DataMatrix(values, {"a", "b"}));
  Eigen::MatrixXd expected(2, 2);
  expected << 1, 0, 0, 0;
  EXPECT_LT((cov - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TotalCovariance, DegenerateCloudIsZero) {
  Eigen::MatrixXd values = Eigen::RowVector3d(2.0, -1.0, 7.0).replicate(6, 1);
  Eigen::MatrixXd cov = total_covariance(DataMatrix::with_default_names(values));
  EXPECT_LT(cov.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TotalCovariance, MatchesBruteForceLoop) {
  Eigen::MatrixXd values = slpca::testing::random_matrix(5, 3, 7);
  Eigen::MatrixXd cov = total_covariance(DataMatrix::with_default_names(values));
  Eigen::MatrixXd brute = slpca::oracle::covariance_loop(values);
  EXPECT_LT((cov - brute).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TotalCovariance, BitExactSymmetryAndPsd) {
  for (unsigned seed = 0; seed < 8; ++seed) {
    Eigen::MatrixXd values = slpca::testing::random_matrix(30, 5, 100 + seed);
    Eigen::MatrixXd cov = total_covariance(DataMatrix::with_default_names(values));
    for (Eigen::Index a = 0; a < cov.rows(); ++a) {
      for (Eigen::Index b = 0; b < cov.cols(); ++b) {
        EXPECT_EQ(cov(a, b), cov(b, a));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10 * cov.trace());
  }
}

TEST(TotalCovariance, InvariantUnderRowPermutation) {
  Eigen::MatrixXd values = slpca::testing::random_matrix(12, 4, 3);
  Eigen::MatrixXd shuffled = values;
  shuffled.row(0).swap(shuffled.row(7));
  shuffled.row(3).swap(shuffled.row(11));
  Eigen::MatrixXd a = total_covariance(DataMatrix::with_default_names(values));
  Eigen::MatrixXd b = total_covariance(DataMatrix::with_default_names(shuffled));
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()));
}

TEST(TotalCovariance, RequiresTwoRows) {
  Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 2);
  EXPECT_THROW(total_covariance(DataMatrix::with_default_names(one)),
               std::invalid_argument);
}
