#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "stretchlab/conformal.hpp"
#include "stretchlab/errors.hpp"

using namespace stretchlab;

namespace {

const Jet1D kSphere{[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
                    [](double t) { return -std::sin(t); }};
const Jet1D kNeck{[](double t) { return std::cosh(t); }, [](double t) { return std::sinh(t); },
                  [](double t) { return std::cosh(t); }};
const Jet1D kFactor{[](double t) { return 0.1 * std::sin(t) + 0.05 * t * t; },
                    [](double t) { return 0.1 * std::cos(t) + 0.1 * t; },
                    [](double t) { return -0.1 * std::sin(t) + 0.1; }};

}  // namespace

TEST(Conformal, MeanCurvatureClosedForm) {
  // Round sphere of radius 1 rescaled by e^f with f constant: H scales by e^{-f}.
  EXPECT_DOUBLE_EQ(conformal_mean_curvature(1.0, std::log(2.0), 0.0), 0.5);
  EXPECT_DOUBLE_EQ(conformal_mean_curvature(0.0, 0.0, 0.3), -0.3);
}

TEST(Conformal, ReducedRicciNeedsVanishingFactor) {
  // f depends on the normal coordinate only, so Delta f = Hess f(nu, nu).
  FactorJet jet;
  jet.hess_nn = 0.5;
  jet.laplacian = 0.5;
  EXPECT_DOUBLE_EQ(conformal_ricci_normal_reduced(1.0, 2, jet), 1.0 - 2 * 0.5);
  EXPECT_DOUBLE_EQ(conformal_ricci_normal(1.0, 2, jet), conformal_ricci_normal_reduced(1.0, 2, jet));
  jet.f = 1e-3;
  EXPECT_THROW(conformal_ricci_normal_reduced(1.0, 2, jet), PreconditionError);
}

TEST(Conformal, FormulasAgreeWithFiniteDifferences) {
  for (const Jet1D* warp : {&kSphere, &kNeck}) {
    for (int n = 1; n <= 3; ++n) {
      for (double t : {0.4, 0.8, 1.2}) {
        const auto r = conformal_check(*warp, kFactor, n, t, 1e-3);
        EXPECT_LE(r.mean_curvature_residual(), 1e-6);
        EXPECT_LE(r.ricci_residual(), 1e-6);
      }
    }
  }
}

TEST(Conformal, ConstantPotentialShiftsSpectrum) {
  // On a circle the lowest eigenfunction of -phi'' - P phi is constant.
  const std::vector<double> lengths(40, 0.25);
  for (double P : {0.0, 0.5, 3.0}) {
    const std::vector<double> potential(40, P);
    EXPECT_NEAR(stability_form(lengths, potential).lambda_min, -P, 1e-12);
  }
}

TEST(Conformal, CircleSecondEigenvalueConverges) {
  // Second eigenvalue of -d^2/ds^2 on a circle of length L is (2 pi / L)^2.
  const int N = 200;
  const double L = 2 * std::numbers::pi;
  const std::vector<double> lengths(N, L / N);
  const std::vector<double> potential(N, 0.0);
  const auto form = stability_form(lengths, potential);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(form.matrix, form.mass);
  EXPECT_NEAR(es.eigenvalues()(1), 1.0, 1e-3);
}

TEST(Conformal, StrictStabilityMargin) {
  // Minimal equator of a flat cylinder: potential 0, so the factor needs
  // c with -2c <= -margin, the first power of two at least margin / 2.
  CurvatureData sigma;
  sigma.n = 1;
  const auto s = make_strictly_stable(sigma, 1.0, 0.1);
  EXPECT_EQ(s.factor.quadratic, 0.0625);
  EXPECT_LE(s.potential, -0.1);
  EXPECT_NEAR(s.form.lambda_min, 0.125, 1e-12);
}

TEST(Conformal, WarpedCylinderCurvatureVanishes) {
  const auto w = WarpedInterval::sample(1.0, 1, [](double) { return 1.0; }, 100);
  const auto c = warped_curvature(w, 0.5);
  EXPECT_EQ(c.mean_curvature, 0.0);
  EXPECT_EQ(c.ricci_normal, 0.0);
  const auto f = make_minimal(w, 0.5);
  EXPECT_EQ(f.normal_derivative_at_sigma, 0.0);
}
