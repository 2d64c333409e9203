#include <gtest/gtest.h>

#include <cmath>

#include "stretchlab/cones.hpp"
#include "stretchlab/fixtures.hpp"

using namespace stretchlab;

namespace {

long binom(int n, int k) {
  if (k < 0 || n < k) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

MinimalCone product_cone(int p, int q) {
  MinimalCone c;
  c.ambient_dim = p + q + 2;
  c.link = ProductOfSpheres{p, q};
  return c;
}

}  // namespace

TEST(Cones, HarmonicDimensionsFromBinomials) {
  // dim H_k(S^p) = C(k+p, p) - C(k+p-2, p).
  for (int p = 1; p <= 8; ++p) {
    for (int k = 0; k <= 6; ++k) {
      EXPECT_EQ(spherical_harmonic_dimension(p, k), binom(k + p, p) - binom(k + p - 2, p)) << p << " " << k;
    }
  }
}

TEST(Cones, ClassificationTable) {
  for (int p = 1; p <= 11; ++p) {
    for (int q = p; p + q <= 12; ++q) {
      const auto v = classify_stability(product_cone(p, q), product_link_spectrum(p, q, 8));
      const int n = p + q + 1;
      // mu_1 = -(p+q) for the minimal product link, threshold -(n-2)^2/4.
      EXPECT_NEAR(v.mu1, -(p + q), 1e-12);
      EXPECT_NEAR(v.threshold, -(n - 2.0) * (n - 2.0) / 4.0, 1e-15);
      const bool stable = 4 * (p + q) < (p + q - 1) * (p + q - 1);
      EXPECT_EQ(v.cls == StabilityClass::StrictlyStable, stable) << p << "," << q;
      EXPECT_EQ(v.cls == StabilityClass::Unstable, !stable && 4 * (p + q) != (p + q - 1) * (p + q - 1));
    }
  }
}

TEST(Cones, SimonsConeAndSmallProducts) {
  const auto v = classify_stability(product_cone(3, 3), product_link_spectrum(3, 3, 4));
  EXPECT_EQ(v.mu1, -6.0);
  EXPECT_EQ(v.threshold, -6.25);
  EXPECT_EQ(v.cls, StabilityClass::StrictlyStable);
  for (int p = 1; p <= 2; ++p) {
    EXPECT_EQ(classify_stability(product_cone(p, p), product_link_spectrum(p, p, 4)).cls,
              StabilityClass::Unstable);
  }
}

TEST(Cones, RadialExponentsSolveTheIndicialEquation) {
  const auto v = classify_stability(product_cone(3, 3), product_link_spectrum(3, 3, 20));
  ASSERT_FALSE(v.exponents.empty());
  for (const auto& e : v.exponents) {
    // gamma^2 + (n-2) gamma - mu = 0
    for (double g : {e.gamma_minus, e.gamma_plus}) {
      EXPECT_NEAR(g * g + (v.n - 2) * g - e.mu, 0.0, 1e-10);
    }
    EXPECT_LE(e.gamma_minus, e.gamma_plus);
  }
}

TEST(Cones, SpectrumCountsMultiplicity) {
  const auto s = product_link_spectrum(1, 1, 9);
  ASSERT_EQ(s.eigenvalues.size(), 9u);
  // Clifford torus: -2 once, then 0 (k or m = 1) four times.
  EXPECT_EQ(s.eigenvalues[0], -2.0);
  for (int i = 1; i <= 4; ++i) EXPECT_NEAR(s.eigenvalues[i], 0.0, 1e-12);
}

TEST(Cones, MeshedCliffordTorus) {
  const auto mesh = product_torus(24, std::sqrt(0.5), std::sqrt(0.5));
  MeshedLink link{mesh, std::vector<double>(mesh.vertex_count(), 2.0)};
  const auto s = meshed_link_spectrum(link, 3);
  EXPECT_NEAR(s.eigenvalues.front(), -2.0, 1e-2);
}
