#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "stretchlab/collar.hpp"
#include "stretchlab/surface.hpp"
#include "stretchlab/warped.hpp"

namespace stretchlab {

/// First and second derivative data of a conformal factor f at a point of
/// Sigma, with nu the chosen unit normal.
struct FactorJet {
  double f = 0.0;
  double df_dnu = 0.0;
  double hess_nn = 0.0;    // Hess f(nu, nu)
  double laplacian = 0.0;  // Delta_g f
  double grad_sq = 0.0;    // |grad f|^2
};

/// e^{-f} (H_g - df/dnu); H is the mean of the principal curvatures.
double conformal_mean_curvature(double H_g, double f, double df_dnu);

/// Ric_h(nu_h, nu_h) for h = e^{2f} g on a manifold of dimension n + 1.
double conformal_ricci_normal(double ric_nn, int n, const FactorJet& jet);

/// Reduced form Ric - n Hess f(nu, nu), valid where f and grad f vanish.
/// Throws PreconditionError when |f| or |grad f| exceeds `tolerance`.
double conformal_ricci_normal_reduced(double ric_nn, int n, const FactorJet& jet,
                                      double tolerance = 1e-12);

/// Smooth function of one variable with its first two derivatives.
struct Jet1D {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

struct ConformalResidual {
  double t = 0.0;
  double h = 0.0;  // finite-difference step
  double mean_curvature_formula = 0.0;
  double mean_curvature_fd = 0.0;
  double ricci_formula = 0.0;
  double ricci_fd = 0.0;

  double mean_curvature_residual() const;
  double ricci_residual() const;
};

/// Level set {t} of dt^2 + w(t)^2 g_round (fibre S^n), normal nu = -d/dt,
/// so H = w'/w and Ric(nu, nu) = -n w''/w. The conformal factor F(t) is
/// applied by formula and, independently, by central differences of the
/// new warp e^F w in its own arc length.
ConformalResidual conformal_check(const Jet1D& warp, const Jet1D& factor, int n, double t, double h);

/// f = (a s + c s^2) chi(s) with s = t_sigma - t (distance along nu) and
/// chi a C^2 cutoff: 1 for |s| <= w/3, 0 for |s| >= 2w/3, w = half_width.
struct ConformalFactor {
  double t_sigma = 0.0;
  double half_width = 0.0;
  double linear = 0.0;
  double quadratic = 0.0;
  std::vector<double> values;  // samples on the interval grid
  double normal_derivative_at_sigma = 0.0;

  /// f, df/dt, d2f/dt2 at t.
  std::array<double, 3> evaluate(double t) const;
};

struct StabilityForm {
  Eigen::MatrixXd stiffness;
  Eigen::MatrixXd mass;
  Eigen::MatrixXd matrix;  // stiffness - potential-weighted mass
  double lambda_min = 0.0;
};

/// P1 elements on a closed polygon: edge k joins node k and node k+1 (mod
/// N); potential P = |II|^2 + Ric(nu, nu) per node. lambda_min is the
/// lowest eigenvalue of (K - M_P) phi = lambda M phi.
StabilityForm stability_form(std::span<const double> edge_lengths, std::span<const double> potential);

/// Curvature of Sigma at one point.
struct CurvatureData {
  int n = 1;                    // dimension of Sigma
  double mean_curvature = 0.0;  // normalised: mean of the principal curvatures
  double ricci_normal = 0.0;    // Ric(nu, nu); the Gauss curvature when n = 1
  double second_fundamental_sq = 0.0;
};

/// Curvature of the level set through grid point nearest t, from central
/// differences of the warp and longitudinal samples (nu = -d/dt).
CurvatureData warped_curvature(const WarpedInterval& w, double t);

/// New interval with warp e^f w and longitudinal factor e^{2f} rho.
WarpedInterval apply_conformal(const WarpedInterval& w, const ConformalFactor& f);

/// f_1 with df_1/dnu = H_g at Sigma = {t_sigma}; f_1 = 0 when H_g = 0.
ConformalFactor make_minimal(const WarpedInterval& w, double t_sigma);

struct StabilisedFactor {
  ConformalFactor factor;
  StabilityForm form;
  double potential = 0.0;  // |II|^2 + Ric(nu, nu) on Sigma after the change
};

/// f_2 = c s^2 chi(s) with c from {0, 2^-10, 2^-9, ...}, the first value
/// making the potential |II|^2 + Ric - 2nc <= -margin. Sigma must be
/// minimal and a circle of the given length (the form is assembled on it
/// with `nodes` elements).
StabilisedFactor make_strictly_stable(const CurvatureData& sigma, double sigma_length, double margin,
                                      int nodes = 64);
StabilisedFactor make_strictly_stable(const WarpedInterval& w, double t_sigma, double margin,
                                      int nodes = 64);

/// Surface model on a mesh collar, nu pointing out of Omega (the ring 0
/// side). Per Sigma vertex: k_g = (angle sum outside - angle sum inside) /
/// (2 x dual length), K = angle defect / (incident area / 3).
struct SigmaCurvature {
  std::vector<double> geodesic;
  std::vector<double> gauss;
  std::vector<double> edge_lengths;  // fibre edges of Sigma in ring order
};

SigmaCurvature sigma_curvature(const TriangulatedSurface& surface, const Collar& collar);

/// Per-vertex factor on a mesh; zero off the collar.
struct MeshConformalFactor {
  std::vector<double> values;
  std::vector<double> normal_derivative_at_sigma;  // per Sigma vertex
  double quadratic = 0.0;
};

MeshConformalFactor make_minimal(const TriangulatedSurface& surface, const Collar& collar);

struct MeshStabilisedFactor {
  MeshConformalFactor factor;
  StabilityForm form;
  std::vector<double> potential;
};

MeshStabilisedFactor make_strictly_stable(const TriangulatedSurface& surface, const Collar& collar,
                                          double margin);

/// Stability form of Sigma with the mesh potential k_g^2 + K.
StabilityForm stability_form(const TriangulatedSurface& surface, const Collar& collar);

/// Edge lengths scaled by exp((f_u + f_v) / 2).
TriangulatedSurface apply_conformal(const TriangulatedSurface& surface, std::span<const double> f);

}  // namespace stretchlab
