#include "slpca/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace slpca {

namespace {

std::vector<std::string> default_names(Eigen::Index p) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(p));
  for (Eigen::Index j = 0; j < p; ++j) {
    names.push_back("V" + std::to_string(j + 1));
  }
  return names;
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delimiter)) {
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == delimiter) {
    cells.emplace_back();
  }
  if (cells.empty()) {
    cells.emplace_back();
  }
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col_no) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin != end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
  while (end != begin && std::isspace(static_cast<unsigned char>(end[-1]))) --end;

  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || begin == end) {
    throw std::invalid_argument("csv: cannot parse '" + cell + "' as a number at row " +
                                std::to_string(line_no) + ", column " +
                                std::to_string(col_no));
  }
  if (!std::isfinite(value)) {
    throw std::invalid_argument("csv: non-finite value at row " + std::to_string(line_no) +
                                ", column " + std::to_string(col_no));
  }
  return value;
}

}  // namespace

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::vector<std::string> column_names)
    : values_(std::move(values)), column_names_(std::move(column_names)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw std::invalid_argument("DataMatrix: need at least one row and one column");
  }
  if (static_cast<Eigen::Index>(column_names_.size()) != values_.cols()) {
    throw std::invalid_argument("DataMatrix: expected " + std::to_string(values_.cols()) +
                                " column names, got " +
                                std::to_string(column_names_.size()));
  }
  std::set<std::string> unique(column_names_.begin(), column_names_.end());
  if (static_cast<Eigen::Index>(unique.size()) != values_.cols()) {
    throw std::invalid_argument("DataMatrix: column names must be unique");
  }
  if (!values_.allFinite()) {
    throw std::invalid_argument("DataMatrix: all entries must be finite");
  }
}

DataMatrix DataMatrix::with_default_names(Eigen::MatrixXd values) {
  auto names = default_names(values.cols());
  return DataMatrix(std::move(values), std::move(names));
}

Eigen::MatrixXd CenteringInfo::apply(const Eigen::MatrixXd& rows) const {
  Eigen::MatrixXd out = rows.rowwise() - means.transpose();
  out.array().rowwise() /= scales.transpose().array();
  return out;
}

Eigen::MatrixXd CenteringInfo::invert(const Eigen::MatrixXd& rows) const {
  Eigen::MatrixXd out = rows;
  out.array().rowwise() *= scales.transpose().array();
  out.rowwise() += means.transpose();
  return out;
}

CenteringInfo CenteringInfo::identity(Eigen::Index p) {
  return CenteringInfo{Eigen::VectorXd::Zero(p), Eigen::VectorXd::Ones(p), false};
}

DataMatrix load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream file(path);
  if (!file) {
    throw std::invalid_argument("csv: cannot open file '" + path + "'");
  }

  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;

  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    auto cells = split_line(line, options.delimiter);

    if (line_no == 1 && options.has_header) {
      for (auto& name : cells) {
        // trim surrounding whitespace from header labels
        auto first = name.find_first_not_of(" \t");
        auto last = name.find_last_not_of(" \t");
        name = (first == std::string::npos) ? "" : name.substr(first, last - first + 1);
      }
      names = cells;
      width = cells.size();
      continue;
    }

    if (width == 0) {
      width = cells.size();
    } else if (cells.size() != width) {
      throw std::invalid_argument("csv: ragged row at line " + std::to_string(line_no) +
                                  " (expected " + std::to_string(width) + " cells, got " +
                                  std::to_string(cells.size()) + ")");
    }

    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      row.push_back(parse_cell(cells[j], line_no, j + 1));
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) {
    throw std::invalid_argument("csv: no data rows in '" + path + "'");
  }

  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }

  if (names.empty()) {
    names = default_names(values.cols());
  }
  return DataMatrix(std::move(values), std::move(names));
}

void write_csv(const std::string& path, const DataMatrix& data, char delimiter) {
  std::ofstream file(path);
  if (!file) {
    throw std::invalid_argument("csv: cannot open '" + path + "' for writing");
  }
  const auto& names = data.column_names();
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j) file << delimiter;
    file << names[j];
  }
  file << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < data.p(); ++j) {
      if (j) file << delimiter;
      std::snprintf(buf, sizeof(buf), "%.17g", data.values()(i, j));
      file << buf;
    }
    file << '\n';
  }
  if (!file) {
    throw std::runtime_error("csv: write to '" + path + "' failed");
  }
}

std::pair<DataMatrix, CenteringInfo> center_standardize(const DataMatrix& data,
                                                        bool standardize) {
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  if (standardize && n < 2) {
    throw std::invalid_argument("center_standardize: standardization needs n >= 2");
  }

  Eigen::VectorXd means = data.values().colwise().mean();
  Eigen::MatrixXd centered = data.values().rowwise() - means.transpose();

  Eigen::VectorXd scales = Eigen::VectorXd::Ones(p);
  if (standardize) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double lo = data.values().col(j).minCoeff();
      const double hi = data.values().col(j).maxCoeff();
      if (lo == hi) {
        throw std::invalid_argument("center_standardize: column '" +
                                    data.column_names()[static_cast<std::size_t>(j)] +
                                    "' has zero variance");
      }
      scales(j) = std::sqrt(centered.col(j).squaredNorm() / static_cast<double>(n));
      centered.col(j) /= scales(j);
    }
  }

  DataMatrix out(std::move(centered), data.column_names());
  return {std::move(out), CenteringInfo{std::move(means), std::move(scales), standardize}};
}

Eigen::MatrixXd total_covariance(const DataMatrix& data) {
  const Eigen::Index n = data.n();
  if (n < 2) {
    throw std::invalid_argument("total_covariance: need n >= 2");
  }
  Eigen::VectorXd means = data.values().colwise().mean();
  Eigen::MatrixXd centered = data.values().rowwise() - means.transpose();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(data.p(), data.p());
  cov.selfadjointView<Eigen::Lower>().rankUpdate(centered.adjoint(),
                                                 1.0 / static_cast<double>(n));
  // mirror the computed triangle so symmetry holds to bit equality
  cov.triangularView<Eigen::StrictlyUpper>() = cov.adjoint();
  return cov;
}

}  // namespace slpca
