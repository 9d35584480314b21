#include "slpca/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using slpca::NormalStream;

TEST(NormalStream, DeterministicPerSeed) {
  NormalStream a(42), b(42), c(43);
  bool any_different = false;
  for (int i = 0; i < 100; ++i) {
    const double va = a.next();
    EXPECT_EQ(va, b.next());
    if (va != c.next()) any_different = true;
  }
  EXPECT_TRUE(any_different);
}

TEST(NormalStream, MomentsLookGaussian) {
  NormalStream stream(7);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = stream.next();
    sum += z;
    sum2 += z * z;
    sum4 += z * z * z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sum2 / n, 1.0, 0.02);
  EXPECT_NEAR(sum4 / n, 3.0, 0.1);  // Gaussian kurtosis
}

TEST(NormalStream, AllValuesFinite) {
  NormalStream stream(0);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_TRUE(std::isfinite(stream.next()));
  }
}
