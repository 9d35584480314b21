#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

namespace slpca {

/// Immutable n x p numeric table with named columns.
///
/// Invariants enforced at construction: n >= 1, p >= 1, every entry finite,
/// exactly p unique column names.
class DataMatrix {
public:
  DataMatrix(Eigen::MatrixXd values, std::vector<std::string> column_names);

  /// Builds a table with generated names V1..Vp.
  static DataMatrix with_default_names(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& column_names() const { return column_names_; }
  Eigen::Index n() const { return values_.rows(); }
  Eigen::Index p() const { return values_.cols(); }

private:
  Eigen::MatrixXd values_;
  std::vector<std::string> column_names_;
};

/// Column-wise affine transform y -> (y - mean) / scale and its inverse.
/// Scales are all 1 when standardization is off.
struct CenteringInfo {
  Eigen::VectorXd means;
  Eigen::VectorXd scales;
  bool standardized = false;

  Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;
  Eigen::MatrixXd invert(const Eigen::MatrixXd& rows) const;

  static CenteringInfo identity(Eigen::Index p);
};

struct CsvOptions {
  bool has_header = true;
  char delimiter = ',';
};

/// Reads a numeric CSV. Throws std::invalid_argument on missing file, ragged
/// rows, non-numeric or non-finite cells (with row/column location), or an
/// empty file. Column names come from the header or are generated as V1..Vp.
DataMatrix load_csv(const std::string& path, const CsvOptions& options = {});

/// Writes a CSV with header row. Values carry full round-trip precision.
void write_csv(const std::string& path, const DataMatrix& data, char delimiter = ',');

/// Subtracts column means; when `standardize` is set also divides each column
/// by its standard deviation (denominator n). A constant column under
/// standardization is an error.
std::pair<DataMatrix, CenteringInfo> center_standardize(const DataMatrix& data,
                                                        bool standardize);

/// Covariance matrix with denominator n (maximum-likelihood convention used
/// throughout the library). Symmetric to bit equality.
Eigen::MatrixXd total_covariance(const DataMatrix& data);

}  // namespace slpca
