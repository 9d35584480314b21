#include "slpca/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace slpca {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

Eigen::MatrixXd matrix_from_json(const json& rows, Eigen::Index expected_cols = -1) {
  if (!rows.is_array()) {
    throw std::invalid_argument("model file: expected an array of rows");
  }
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  if (r == 0) {
    return Eigen::MatrixXd(0, std::max<Eigen::Index>(expected_cols, 0));
  }
  const Eigen::Index c = static_cast<Eigen::Index>(rows.at(0).size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != c) {
      throw std::invalid_argument("model file: ragged matrix rows");
    }
    for (Eigen::Index j = 0; j < c; ++j) {
      m(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
    }
  }
  return m;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  if (!arr.is_array()) {
    throw std::invalid_argument("model file: expected an array of numbers");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = arr.at(static_cast<std::size_t>(i)).get<double>();
  }
  return v;
}

json basis_to_json(const BSplineBasis& basis) {
  return json{{"degree", basis.degree},
              {"num_basis", basis.num_basis},
              {"lo", basis.lo},
              {"hi", basis.hi},
              {"knots", vector_to_json(basis.knots)}};
}

BSplineBasis basis_from_json(const json& j) {
  BSplineBasis basis;
  basis.degree = j.at("degree").get<int>();
  basis.num_basis = j.at("num_basis").get<int>();
  basis.lo = j.at("lo").get<double>();
  basis.hi = j.at("hi").get<double>();
  basis.knots = vector_from_json(j.at("knots"));
  if (basis.knots.size() != basis.num_basis + basis.degree + 1) {
    throw std::invalid_argument("model file: knot vector has wrong length");
  }
  return basis;
}

json read_document(const std::string& path, const char* expected_format) {
  std::ifstream file(path);
  if (!file) {
    throw std::invalid_argument("cannot open '" + path + "'");
  }
  json doc;
  try {
    file >> doc;
  } catch (const json::parse_error& err) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + err.what());
  }
  if (doc.value("format", "") != expected_format) {
    throw std::invalid_argument("'" + path + "' is not a " +
                                std::string(expected_format) + " document");
  }
  if (doc.value("format_version", 0) != 1) {
    throw std::invalid_argument("'" + path + "' has an unsupported format version");
  }
  return doc;
}

void write_document(const json& doc, const std::string& path) {
  std::ofstream file(path);
  if (!file) {
    throw std::invalid_argument("cannot open '" + path + "' for writing");
  }
  file << doc.dump(2) << '\n';
  if (!file) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

}  // namespace

void save_model(const SlpcaModel& model, const std::string& path) {
  json doc;
  doc["format"] = "slpca-model";
  doc["format_version"] = 1;
  doc["n_train"] = model.n_train;
  doc["column_names"] = model.column_names;
  doc["axes_source"] = to_string(model.axes_source);
  doc["centering"] = json{{"standardized", model.centering.standardized},
                          {"means", vector_to_json(model.centering.means)},
                          {"scales", vector_to_json(model.centering.scales)}};
  doc["basis"] = json{{"d", model.d()},
                      {"p", model.p()},
                      {"axes", matrix_to_json(model.basis.P())},
                      {"complement", matrix_to_json(model.basis.Pbar())}};
  doc["mu_x"] = vector_to_json(model.mu_x);
  doc["sigma_x"] = matrix_to_json(model.sigma_x);
  doc["sigma2"] = model.sigma2;

  json reg;
  if (const auto* linear = std::get_if<LinearRegression>(&model.regression)) {
    reg["kind"] = "linear";
    reg["intercept"] = vector_to_json(linear->intercept);
    reg["coefficients"] = matrix_to_json(linear->coefficients);
  } else {
    const auto& spline = std::get<AdditiveRegression>(model.regression);
    reg["kind"] = "spline";
    reg["intercept"] = vector_to_json(spline.intercept);
    json blocks = json::array();
    for (const auto& block : spline.blocks) {
      blocks.push_back(matrix_to_json(block));
    }
    reg["blocks"] = std::move(blocks);
    json bases = json::array();
    for (const auto& basis : spline.bases) {
      bases.push_back(basis_to_json(basis));
    }
    reg["bases"] = std::move(bases);
  }
  doc["regression"] = std::move(reg);

  if (model.sample_seed) {
    doc["sample_seed"] = *model.sample_seed;
  }
  write_document(doc, path);
}

SlpcaModel load_model(const std::string& path) {
  const json doc = read_document(path, "slpca-model");

  const auto& jb = doc.at("basis");
  CompletedBasis basis(matrix_from_json(jb.at("axes")),
                       matrix_from_json(jb.at("complement"), jb.at("p").get<int>()));

  const auto& jc = doc.at("centering");
  CenteringInfo centering{vector_from_json(jc.at("means")),
                          vector_from_json(jc.at("scales")),
                          jc.at("standardized").get<bool>()};
  if (centering.means.size() != basis.p() || centering.scales.size() != basis.p()) {
    throw std::invalid_argument("model file: centering size does not match p");
  }
  if ((centering.scales.array() <= 0.0).any()) {
    throw std::invalid_argument("model file: scales must be strictly positive");
  }

  const auto& jr = doc.at("regression");
  Regression regression;
  if (jr.at("kind").get<std::string>() == "linear") {
    LinearRegression linear;
    linear.intercept = vector_from_json(jr.at("intercept"));
    linear.coefficients = matrix_from_json(jr.at("coefficients"));
    regression = std::move(linear);
  } else {
    AdditiveRegression spline;
    spline.intercept = vector_from_json(jr.at("intercept"));
    for (const auto& jblock : jr.at("blocks")) {
      spline.blocks.push_back(matrix_from_json(jblock));
    }
    for (const auto& jbasis : jr.at("bases")) {
      spline.bases.push_back(basis_from_json(jbasis));
    }
    if (spline.blocks.size() != spline.bases.size()) {
      throw std::invalid_argument("model file: block/basis counts differ");
    }
    regression = std::move(spline);
  }

  SlpcaModel model{
      .basis = std::move(basis),
      .regression = std::move(regression),
      .mu_x = vector_from_json(doc.at("mu_x")),
      .sigma_x = matrix_from_json(doc.at("sigma_x")),
      .sigma2 = doc.at("sigma2").get<double>(),
      .centering = std::move(centering),
      .column_names = doc.at("column_names").get<std::vector<std::string>>(),
      .axes_source = axes_source_from_string(doc.at("axes_source").get<std::string>()),
      .n_train = doc.at("n_train").get<Eigen::Index>(),
      .sample_seed = std::nullopt,
  };
  if (doc.contains("sample_seed")) {
    model.sample_seed = doc.at("sample_seed").get<std::uint64_t>();
  }
  if (model.mu_x.size() != model.d() ||
      model.sigma_x.rows() != model.d() || model.sigma_x.cols() != model.d()) {
    throw std::invalid_argument("model file: latent parameter sizes do not match d");
  }
  if (static_cast<Eigen::Index>(model.column_names.size()) != model.p()) {
    throw std::invalid_argument("model file: column name count does not match p");
  }
  return model;
}

void save_axes(const AxesFile& axes, const std::string& path) {
  json doc;
  doc["format"] = "slpca-axes";
  doc["format_version"] = 1;
  doc["p"] = axes.axes.p();
  doc["source"] = to_string(axes.axes.source());
  if (axes.k) {
    doc["k"] = *axes.k;
  }
  doc["standardize"] = axes.standardize;
  doc["axes"] = matrix_to_json(axes.axes.axes());
  write_document(doc, path);
}

AxesFile load_axes(const std::string& path) {
  const json doc = read_document(path, "slpca-axes");
  ProjectionBasis basis(matrix_from_json(doc.at("axes")),
                        axes_source_from_string(doc.at("source").get<std::string>()));
  AxesFile out{std::move(basis), std::nullopt, doc.value("standardize", false)};
  if (doc.contains("k")) {
    out.k = doc.at("k").get<int>();
  }
  return out;
}

}  // namespace slpca
