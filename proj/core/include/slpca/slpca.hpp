#pragma once

#include "slpca/axes.hpp"
#include "slpca/bspline.hpp"
#include "slpca/data.hpp"
#include "slpca/model.hpp"
#include "slpca/model_io.hpp"
#include "slpca/regression.hpp"
#include "slpca/rng.hpp"
#include "slpca/selection.hpp"
#include "slpca/simulate.hpp"
