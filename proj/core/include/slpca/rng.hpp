#pragma once

#include <cstdint>
#include <random>

namespace slpca {

/// Deterministic stream of standard normal variates.
///
/// Engine: std::mt19937_64 seeded directly with the user seed. Variates:
/// Box-Muller on uniforms u1 in (0,1], u2 in [0,1); each pair of uniforms
/// yields two normals and the second one is cached, so the mapping from seed
/// to sequence is fixed regardless of how calls are grouped. File formats and
/// test suites rely on this exact scheme; treat it as frozen.
class NormalStream {
public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  /// Next N(0,1) draw.
  double next();

private:
  double uniform();  // 53-bit uniform in [0,1)

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace slpca
