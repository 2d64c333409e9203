#include "stretchlab/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stretchlab/errors.hpp"

namespace stretchlab {

namespace {

double smootherstep(double x) { return x * x * x * (10.0 + x * (-15.0 + 6.0 * x)); }
double smootherstep_d1(double x) { return 30.0 * x * x * (1.0 - x) * (1.0 - x); }
double smootherstep_d2(double x) { return 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x); }

// chi(s) and its s-derivatives; 1 on |s| <= w/3, 0 on |s| >= 2w/3.
std::array<double, 3> collar_cutoff(double s, double half_width) {
  const double third = half_width / 3.0;
  const double u = std::abs(s);
  if (u <= third) return {1.0, 0.0, 0.0};
  if (u >= 2.0 * third) return {0.0, 0.0, 0.0};
  const double x = (u - third) / third;
  const double sign = s < 0 ? -1.0 : 1.0;
  return {1.0 - smootherstep(x), -sign * smootherstep_d1(x) / third,
          -smootherstep_d2(x) / (third * third)};
}

// (a s + c s^2) chi(s), derivatives in s.
std::array<double, 3> factor_in_s(double s, double half_width, double a, double c) {
  const auto chi = collar_cutoff(s, half_width);
  const double g = a * s + c * s * s;
  const double g1 = a + 2.0 * c * s;
  const double g2 = 2.0 * c;
  return {g * chi[0], g1 * chi[0] + g * chi[1], g2 * chi[0] + 2.0 * g1 * chi[1] + g * chi[2]};
}

double potential_of(const CurvatureData& c) { return c.second_fundamental_sq + c.ricci_normal; }

double choose_quadratic(double base_potential, int n, double margin) {
  if (base_potential <= -margin) return 0.0;
  double c = 1.0 / 1024.0;
  while (base_potential - 2.0 * n * c > -margin) {
    c *= 2.0;
    if (c > 0x1p40) throw StructuralError("no admissible quadratic factor found");
  }
  return c;
}

StabilityForm circle_form(double length, int nodes, double potential) {
  if (nodes < 3) throw InputError("stability form needs at least three nodes");
  std::vector<double> edges(nodes, length / nodes);
  std::vector<double> pot(nodes, potential);
  return stability_form(edges, pot);
}

}  // namespace

double conformal_mean_curvature(double H_g, double f, double df_dnu) {
  return std::exp(-f) * (H_g - df_dnu);
}

double conformal_ricci_normal(double ric_nn, int n, const FactorJet& j) {
  const double m = n - 1;
  return std::exp(-2.0 * j.f) *
         (ric_nn - m * (j.hess_nn - j.df_dnu * j.df_dnu) - (j.laplacian + m * j.grad_sq));
}

double conformal_ricci_normal_reduced(double ric_nn, int n, const FactorJet& j, double tolerance) {
  if (std::abs(j.f) > tolerance || std::sqrt(j.grad_sq) > tolerance) {
    throw PreconditionError("reduced Ricci form needs f and grad f to vanish on Sigma");
  }
  return ric_nn - n * j.hess_nn;
}

double ConformalResidual::mean_curvature_residual() const {
  return std::abs(mean_curvature_formula - mean_curvature_fd);
}

double ConformalResidual::ricci_residual() const { return std::abs(ricci_formula - ricci_fd); }

ConformalResidual conformal_check(const Jet1D& warp, const Jet1D& factor, int n, double t, double h) {
  if (n < 1 || !(h > 0.0)) throw InputError("conformal check needs n >= 1 and h > 0");
  ConformalResidual r;
  r.t = t;
  r.h = h;

  const double w = warp.value(t), w1 = warp.d1(t), w2 = warp.d2(t);
  const double F = factor.value(t), F1 = factor.d1(t), F2 = factor.d2(t);
  const double H = w1 / w;
  const double ric = -n * w2 / w;
  r.mean_curvature_formula = conformal_mean_curvature(H, F, -F1);
  FactorJet jet{F, -F1, F2, F2 + n * H * F1, F1 * F1};
  r.ricci_formula = conformal_ricci_normal(ric, n, jet);

  // New warp W = e^F w with arc length ds = e^F dt.
  auto W = [&](double x) { return std::exp(factor.value(x)) * warp.value(x); };
  const double Wm = W(t - h), W0 = W(t), Wp = W(t + h);
  const double e0 = std::exp(-F);
  const double Ws = e0 * (Wp - Wm) / (2.0 * h);
  const double Gp = std::exp(-factor.value(t + 0.5 * h)) * (Wp - W0) / h;
  const double Gm = std::exp(-factor.value(t - 0.5 * h)) * (W0 - Wm) / h;
  const double Wss = e0 * (Gp - Gm) / h;
  r.mean_curvature_fd = Ws / W0;
  r.ricci_fd = -n * Wss / W0;
  return r;
}

std::array<double, 3> ConformalFactor::evaluate(double t) const {
  if (!(half_width > 0.0)) return {0.0, 0.0, 0.0};
  const auto d = factor_in_s(t_sigma - t, half_width, linear, quadratic);
  return {d[0], -d[1], d[2]};
}

StabilityForm stability_form(std::span<const double> edge_lengths, std::span<const double> potential) {
  const int n = static_cast<int>(edge_lengths.size());
  if (n < 3) throw InputError("stability form needs a polygon with at least three edges");
  if (static_cast<int>(potential.size()) != n) throw InputError("one potential value per node");
  StabilityForm form;
  form.stiffness = Eigen::MatrixXd::Zero(n, n);
  form.mass = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double L = edge_lengths[k];
    if (!(L > 0.0) || !std::isfinite(L)) throw InputError("degenerate cycle edge");
    const int a = k, b = (k + 1) % n;
    const double pa = potential[a], pb = potential[b];
    form.stiffness(a, a) += 1.0 / L;
    form.stiffness(b, b) += 1.0 / L;
    form.stiffness(a, b) -= 1.0 / L;
    form.stiffness(b, a) -= 1.0 / L;
    form.mass(a, a) += L / 3.0;
    form.mass(b, b) += L / 3.0;
    form.mass(a, b) += L / 6.0;
    form.mass(b, a) += L / 6.0;
    // Exact integral of P phi_i phi_j with P linear on the element.
    weighted(a, a) += L * (3.0 * pa + pb) / 12.0;
    weighted(b, b) += L * (pa + 3.0 * pb) / 12.0;
    weighted(a, b) += L * (pa + pb) / 12.0;
    weighted(b, a) += L * (pa + pb) / 12.0;
  }
  form.matrix = form.stiffness - weighted;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(form.matrix, form.mass,
                                                                  Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("stability eigen solve failed");
  form.lambda_min = solver.eigenvalues()(0);
  return form;
}

CurvatureData warped_curvature(const WarpedInterval& w, double t) {
  const int N = w.intervals();
  if (N < 2) throw InputError("need at least two grid intervals");
  const double h = w.spacing();
  const int i = std::clamp(static_cast<int>(std::lround(t / h)), 1, N - 1);
  const auto& f = w.warp();
  const auto& rho = w.longitudinal();
  const double s0 = std::sqrt(rho[i]);
  const double sp = std::sqrt(0.5 * (rho[i] + rho[i + 1]));
  const double sm = std::sqrt(0.5 * (rho[i] + rho[i - 1]));
  const double ws = (f[i + 1] - f[i - 1]) / (2.0 * h * s0);
  const double wss = ((f[i + 1] - f[i]) / (h * sp) - (f[i] - f[i - 1]) / (h * sm)) / (h * s0);
  CurvatureData c;
  c.n = w.fibre_dim();
  c.mean_curvature = ws / f[i];
  c.ricci_normal = -c.n * wss / f[i];
  c.second_fundamental_sq = c.n * c.mean_curvature * c.mean_curvature;
  return c;
}

WarpedInterval apply_conformal(const WarpedInterval& w, const ConformalFactor& f) {
  std::vector<double> warp = w.warp();
  std::vector<double> rho = w.longitudinal();
  for (int i = 0; i <= w.intervals(); ++i) {
    const double e = std::exp(f.evaluate(w.grid_point(i))[0]);
    warp[i] *= e;
    rho[i] *= e * e;
  }
  return WarpedInterval(w.length(), w.fibre_dim(), std::move(warp), w.caps(), std::move(rho));
}

namespace {

ConformalFactor warped_factor(const WarpedInterval& w, double t_sigma, double a, double c) {
  const double half = std::min(t_sigma, w.length() - t_sigma);
  if (!(half > 0.0)) throw StructuralError("Sigma is not inside a collar of the interval");
  ConformalFactor f;
  f.t_sigma = t_sigma;
  f.half_width = half;
  f.linear = a;
  f.quadratic = c;
  f.normal_derivative_at_sigma = a;
  f.values.resize(w.intervals() + 1);
  for (int i = 0; i <= w.intervals(); ++i) f.values[i] = f.evaluate(w.grid_point(i))[0];
  return f;
}

}  // namespace

ConformalFactor make_minimal(const WarpedInterval& w, double t_sigma) {
  if (!(t_sigma > 0.0 && t_sigma < w.length())) {
    throw StructuralError("Sigma is not inside a collar of the interval");
  }
  const auto curv = warped_curvature(w, t_sigma);
  return warped_factor(w, t_sigma, curv.mean_curvature, 0.0);
}

StabilisedFactor make_strictly_stable(const CurvatureData& sigma, double sigma_length, double margin,
                                      int nodes) {
  if (margin < 0.0) throw InputError("margin must be non-negative");
  if (std::abs(sigma.mean_curvature) > 1e-9) {
    throw PreconditionError("Sigma is not minimal; apply make_minimal first");
  }
  StabilisedFactor out;
  const double base = potential_of(sigma);
  out.factor.quadratic = choose_quadratic(base, sigma.n, margin);
  out.potential = base - 2.0 * sigma.n * out.factor.quadratic;
  out.form = circle_form(sigma_length, nodes, out.potential);
  return out;
}

StabilisedFactor make_strictly_stable(const WarpedInterval& w, double t_sigma, double margin,
                                      int nodes) {
  if (w.fibre_dim() != 1) throw InputError("the stability form is assembled on curves only");
  const auto curv = warped_curvature(w, t_sigma);
  const double length = 2.0 * std::numbers::pi * w.warp_at(t_sigma);
  auto out = make_strictly_stable(curv, length, margin, nodes);
  out.factor = warped_factor(w, t_sigma, 0.0, out.factor.quadratic);
  return out;
}

SigmaCurvature sigma_curvature(const TriangulatedSurface& surface, const Collar& collar) {
  const int sig = collar.sigma_index();
  const int m = collar.fibre_size();
  const Region inside = collar.band_faces(sig - 1, sig);
  SigmaCurvature out;
  for (int i = 0; i < m; ++i) out.edge_lengths.push_back(surface.edge_length(collar.fibre_edge(sig, i)));
  for (int i = 0; i < m; ++i) {
    const VertexId v = collar.ring(sig)[i];
    double in = 0.0, total = 0.0, area = 0.0;
    for (FaceId f : surface.vertex_faces(v)) {
      const auto& t = surface.face(f);
      const int k = t[0] == v ? 0 : (t[1] == v ? 1 : 2);
      const double angle = surface.corner_angle(f, k);
      total += angle;
      area += surface.face_area(f);
      if (inside.contains(f)) in += angle;
    }
    const double out_angle = total - in;
    const double dual = 0.5 * (out.edge_lengths[(i + m - 1) % m] + out.edge_lengths[i]);
    out.geodesic.push_back((out_angle - in) / (2.0 * dual));
    out.gauss.push_back((2.0 * std::numbers::pi - total) / (area / 3.0));
  }
  return out;
}

namespace {

MeshConformalFactor mesh_factor(const TriangulatedSurface& surface, const Collar& collar,
                                const std::vector<double>& linear, double c) {
  const int sig = collar.sigma_index();
  const double half = std::min(collar.offset(sig) - collar.offset(0),
                               collar.offset(collar.ring_count() - 1) - collar.offset(sig));
  if (!(half > 0.0)) throw StructuralError("Sigma is not inside the collar");
  MeshConformalFactor f;
  f.values.assign(surface.vertex_count(), 0.0);
  f.normal_derivative_at_sigma = linear;
  f.quadratic = c;
  for (int j = 0; j < collar.ring_count(); ++j) {
    const double s = collar.offset(j) - collar.offset(sig);
    for (int i = 0; i < collar.fibre_size(); ++i) {
      f.values[collar.ring(j)[i]] = factor_in_s(s, half, linear[i], c)[0];
    }
  }
  return f;
}

}  // namespace

MeshConformalFactor make_minimal(const TriangulatedSurface& surface, const Collar& collar) {
  const auto curv = sigma_curvature(surface, collar);
  return mesh_factor(surface, collar, curv.geodesic, 0.0);
}

MeshStabilisedFactor make_strictly_stable(const TriangulatedSurface& surface, const Collar& collar,
                                          double margin) {
  if (margin < 0.0) throw InputError("margin must be non-negative");
  const auto curv = sigma_curvature(surface, collar);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < curv.geodesic.size(); ++i) {
    if (std::abs(curv.geodesic[i]) > 1e-9) {
      throw PreconditionError("Sigma is not minimal; apply make_minimal first");
    }
    worst = std::max(worst, curv.geodesic[i] * curv.geodesic[i] + curv.gauss[i]);
  }
  const double c = choose_quadratic(worst, 1, margin);
  MeshStabilisedFactor out;
  out.factor = mesh_factor(surface, collar, std::vector<double>(collar.fibre_size(), 0.0), c);
  for (std::size_t i = 0; i < curv.geodesic.size(); ++i) {
    out.potential.push_back(curv.geodesic[i] * curv.geodesic[i] + curv.gauss[i] - 2.0 * c);
  }
  out.form = stability_form(curv.edge_lengths, out.potential);
  return out;
}

StabilityForm stability_form(const TriangulatedSurface& surface, const Collar& collar) {
  const auto curv = sigma_curvature(surface, collar);
  std::vector<double> potential;
  for (std::size_t i = 0; i < curv.geodesic.size(); ++i) {
    potential.push_back(curv.geodesic[i] * curv.geodesic[i] + curv.gauss[i]);
  }
  return stability_form(curv.edge_lengths, potential);
}

TriangulatedSurface apply_conformal(const TriangulatedSurface& surface, std::span<const double> f) {
  if (static_cast<int>(f.size()) != surface.vertex_count()) throw InputError("one factor value per vertex");
  std::vector<double> lengths(surface.edge_count());
  for (EdgeId e = 0; e < surface.edge_count(); ++e) {
    const auto& k = surface.edge(e);
    lengths[e] = surface.edge_length(e) * std::exp(0.5 * (f[k.v0] + f[k.v1]));
  }
  return surface.with_edge_lengths(std::move(lengths));
}

}  // namespace stretchlab
