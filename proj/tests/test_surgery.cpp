#include <gtest/gtest.h>

#include <cmath>

#include "stretchlab/errors.hpp"
#include "stretchlab/fixtures.hpp"
#include "stretchlab/measure.hpp"
#include "stretchlab/surgery.hpp"
#include "stretchlab/warped.hpp"

using namespace stretchlab;

namespace {

// Straight neck of circumference 4; bands of length `band`, so collar rings
// sit at multiples of `band` from Sigma.
Dumbbell neck(double band, int bands_per_side) {
  DumbbellOptions o;
  o.ring_vertices = 4;
  o.neck_fibre_size = 4.0;
  o.bands_per_side = bands_per_side;
  o.band_length = band;
  o.cap_height = 0.1;
  o.cap_rings = 0;
  return build_dumbbell(o);
}

constexpr double kEps = 0.15;

}  // namespace

TEST(Surgery, ThirdsSpacingMeetsAllProperties) {
  const auto d = neck(kEps / 3, 4);
  const double ell = kEps / 3;
  const std::vector<double> Rs{ell, 2, 4, 8, 16};
  const auto family = surgery_family(d.surface, d.collar, kEps, Rs);
  ASSERT_EQ(family.size(), Rs.size());
  const auto report = verify_surgery(d.surface, family, d.sigma, d.omega, family.front().cylinder);
  EXPECT_TRUE(report.ok()) << (report.violations.empty() ? "" : report.violations.front());
  EXPECT_TRUE(report.perimeter_preserved);
  EXPECT_TRUE(report.outside_volume_constant);
  EXPECT_TRUE(report.cylinder_affine);
  EXPECT_GT(report.cylinder_slope, 0.0);
  EXPECT_LT(report.cylinder_residual, 1e-9);
  EXPECT_TRUE(report.dominates);
  EXPECT_TRUE(report.local);

  for (std::size_t i = 0; i < Rs.size(); ++i) {
    const auto& g = family[i];
    EXPECT_EQ(perimeter(g.surface, d.omega), 4.0);
    // Each side of T is one band of plateau, stretched by R / ell, over a
    // fibre of total length 4: two rectangles of area 4R.
    EXPECT_NEAR(volume(g.surface, g.cylinder), 8.0 * Rs[i], 1e-12 * (1 + Rs[i]));
    EXPECT_NEAR(cylinder_rim_distance(g), Rs[i], 1e-12 * (1 + Rs[i]));
    EXPECT_EQ(volume(g.surface, complement(g.surface, g.cylinder)),
              volume(family[0].surface, complement(family[0].surface, family[0].cylinder)));
  }
}

TEST(Surgery, SixthsSpacingKeepsOutsideVolume) {
  const auto d = neck(kEps / 6, 8);
  const auto family = surgery_family(d.surface, d.collar, kEps, {kEps / 3, 3, 9});
  const auto report = verify_surgery(d.surface, family, d.sigma, d.omega, family.front().cylinder);
  EXPECT_TRUE(report.outside_volume_constant);
  EXPECT_TRUE(report.perimeter_preserved);
}

TEST(Surgery, TwelfthsSpacingStretchesTheTransitions) {
  // Bands straddling the eta transitions have eta > 0 at their midpoints,
  // so the region outside T grows with R.
  const auto d = neck(kEps / 12, 16);
  const auto family = surgery_family(d.surface, d.collar, kEps, {kEps / 3, 3});
  const auto report = verify_surgery(d.surface, family, d.sigma, d.omega, family.front().cylinder);
  EXPECT_FALSE(report.outside_volume_constant);
  EXPECT_TRUE(report.perimeter_preserved);
}

TEST(Surgery, MissingRingIsRejected) {
  const auto d = neck(0.05, 4);
  EXPECT_THROW(surgery_family(d.surface, d.collar, 0.16, {1.0}), Error);
  // eps reaching Sigma leaves no room for the sub-collar.
  EXPECT_THROW(surgery_family(d.surface, d.collar, 0.3, {1.0}), Error);
}

TEST(Surgery, StretchFactorOnPlateau) {
  const CutoffProfile eta(kEps);
  const StretchParams p{8.0, kEps / 3};
  EXPECT_EQ(stretch_factor(eta, p, kEps / 2), std::pow(8.0 / (kEps / 3), 2));
  EXPECT_EQ(stretch_factor(eta, p, 0.01), 1.0);
}

TEST(Surgery, CylinderLengthAgainstSimpson) {
  const CutoffProfile eta(kEps);
  for (double R : {kEps / 3, 1.0, 4.0}) {
    const StretchParams p{R, kEps / 3};
    const double a = kEps / 3, b = 2 * kEps / 3;
    const int n = 2000;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
      sum += w * std::sqrt(stretch_factor(eta, p, a + (b - a) * i / n));
    }
    const double simpson = sum * (b - a) / (3 * n);
    EXPECT_NEAR(cylinder_length(p, eta), simpson, 1e-12 * R);
    EXPECT_NEAR(cylinder_length(p, eta), R, 1e-12 * R);
  }
}

TEST(Surgery, WarpedModelRealisesDistance) {
  const CutoffProfile eta(kEps);
  // Flaring warp, Gamma at t = 0, grid aligned with the eta marks.
  const auto w = WarpedInterval::sample(kEps, 1, [](double t) { return 1.0 + 0.5 * t * t; }, 1200);
  const auto wt = warped_cylindrical_interpolation(w, eta);
  for (double R : {1.0, 5.0}) {
    const auto wr = warped_stretch(wt, {R, kEps / 3}, eta);
    const auto m = warped_measurements(wr, kEps / 3, 2 * kEps / 3);
    EXPECT_NEAR(m.distance, R, 1e-6 * R);
    // On the plateau the warp is constant, equal to its maximum.
    EXPECT_NEAR(m.area_at_c1, m.area_at_c2, 1e-12);
    EXPECT_NEAR(m.area_at_c1, unit_sphere_area(1) * (1.0 + 0.5 * kEps * kEps), 1e-12);
  }
}
