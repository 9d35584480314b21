#pragma once

#include <optional>
#include <string>

#include "slpca/axes.hpp"
#include "slpca/model.hpp"

namespace slpca {

/// Model files are self-describing JSON documents, format "slpca-model"
/// version 1. All reals are written with round-trip precision (at most 17
/// significant digits) and reload to the same double values. See
/// docs/model_format.md for the schema.
void save_model(const SlpcaModel& model, const std::string& path);
SlpcaModel load_model(const std::string& path);

/// Axes files ("slpca-axes" version 1) carry the orthonormal axes row-major
/// plus how they were estimated.
struct AxesFile {
  ProjectionBasis axes;
  std::optional<int> k;  // neighbor count for contiguity axes
  bool standardize = false;
};

void save_axes(const AxesFile& axes, const std::string& path);
AxesFile load_axes(const std::string& path);

}  // namespace slpca
