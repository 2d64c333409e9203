#include "stretchlab/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stretchlab/errors.hpp"
#include "stretchlab/measure.hpp"
#include "stretchlab/parallel.hpp"

namespace stretchlab {

namespace {

int band_between(int ring_a, int ring_b) { return std::min(ring_a, ring_b); }

void recompute_diagonals(const Collar& collar, int band, std::vector<double>& lengths) {
  for (int i = 0; i < collar.fibre_size(); ++i) {
    const double w = 0.5 * (lengths[collar.fibre_edge(band, i)] + lengths[collar.fibre_edge(band + 1, i)]);
    const double d = lengths[collar.longitudinal_edge(band, i)];
    lengths[collar.quad(band, i).diagonal] = std::sqrt(w * w + d * d);
  }
}

SideSurgery plan_side(const TriangulatedSurface& surface, const Collar& collar,
                      const CutoffProfile& cutoff, Side side) {
  const double eps = cutoff.epsilon();
  const auto walk = collar.rings_towards_sigma(side);
  const double origin = collar.offset(walk.front());
  const char* name = side == Side::Minus ? "Gamma-" : "Gamma+";

  const double t_sigma = std::abs(collar.offset(walk.back()) - origin);
  if (!(t_sigma > eps * (1.0 + 1e-9))) {
    throw PreconditionError(std::string("collar on the ") + name +
                            " side is not longer than epsilon; Sigma would be modified");
  }

  SideSurgery s;
  s.side = side;
  s.rim_lo = s.rim_hi = -1;
  for (int ring : walk) {
    const double t = cutoff.snap(std::abs(collar.offset(ring) - origin));
    if (t > eps) break;
    if (t == eps / 3.0) s.rim_lo = static_cast<int>(s.rings.size());
    if (t == 2.0 * eps / 3.0) s.rim_hi = static_cast<int>(s.rings.size());
    s.rings.push_back(ring);
    s.t.push_back(t);
  }
  if (s.rim_lo < 0 || s.rim_hi < 0 || s.t.back() != eps) {
    throw PreconditionError(std::string("collar on the ") + name +
                            " side needs rings at eps/3, 2eps/3 and eps");
  }

  s.h_gamma.assign(collar.fibre_size(), 0.0);
  for (int ring : s.rings) {
    for (int i = 0; i < collar.fibre_size(); ++i) {
      s.h_gamma[i] = std::max(s.h_gamma[i], surface.edge_length(collar.fibre_edge(ring, i)));
    }
  }
  return s;
}

}  // namespace

SurgeredMetric cylindrical_interpolation(const TriangulatedSurface& surface, const Collar& collar,
                                         const CutoffProfile& cutoff) {
  const double eps = cutoff.epsilon();
  std::vector<double> lengths(surface.edge_lengths().begin(), surface.edge_lengths().end());
  SurgeredMetric out{surface, lengths, collar, eps, eps / 3.0, eps / 3.0, false, {}, Region{}};

  std::vector<FaceId> cylinder;
  for (Side side : {Side::Minus, Side::Plus}) {
    auto s = plan_side(surface, collar, cutoff, side);
    std::vector<char> changed(s.rings.size(), 0);
    for (std::size_t j = 0; j < s.rings.size(); ++j) {
      const double eta = cutoff(s.t[j]);
      if (eta == 0.0) continue;
      for (int i = 0; i < collar.fibre_size(); ++i) {
        const EdgeId e = collar.fibre_edge(s.rings[j], i);
        const double l = lengths[e];
        const double h = s.h_gamma[i];
        const double nl = eta == 1.0 ? h : std::sqrt((1.0 - eta) * l * l + eta * h * h);
        if (nl != l) {
          lengths[e] = nl;
          changed[j] = 1;
        }
      }
    }
    for (std::size_t j = 0; j + 1 < s.rings.size(); ++j) {
      if (changed[j] || changed[j + 1]) {
        recompute_diagonals(collar, band_between(s.rings[j], s.rings[j + 1]), lengths);
      }
    }
    const int a = s.rings[s.rim_lo];
    const int b = s.rings[s.rim_hi];
    const auto t = collar.band_faces(std::min(a, b), std::max(a, b));
    cylinder.insert(cylinder.end(), t.faces().begin(), t.faces().end());
    out.sides[side == Side::Minus ? 0 : 1] = std::move(s);
  }
  out.cylinder = Region(std::move(cylinder));
  out.surface = surface.with_edge_lengths(std::move(lengths));
  return out;
}

double stretch_factor(const CutoffProfile& cutoff, StretchParams params, double t) {
  const double eta = cutoff(t);
  if (eta == 0.0) return 1.0;
  const double a = params.R / params.ell;
  return 1.0 + (a * a - 1.0) * eta;
}

SurgeredMetric stretch(const SurgeredMetric& g_tilde, StretchParams params,
                       const CutoffProfile& cutoff) {
  if (!(params.ell > 0.0) || !std::isfinite(params.R)) throw InputError("stretch needs ell > 0 and finite R");
  if (params.R < params.ell) throw InputError("stretch needs R >= ell");
  if (cutoff.epsilon() != g_tilde.epsilon) throw InputError("cutoff epsilon does not match the metric");

  const Collar& collar = g_tilde.collar;
  std::vector<double> lengths(g_tilde.surface.edge_lengths().begin(),
                              g_tilde.surface.edge_lengths().end());
  for (const auto& s : g_tilde.sides) {
    for (std::size_t j = 0; j + 1 < s.rings.size(); ++j) {
      const double mid = cutoff.snap(0.5 * (s.t[j] + s.t[j + 1]));
      const double rho = stretch_factor(cutoff, params, mid);
      if (rho == 1.0) continue;
      const double scale = std::sqrt(rho);
      const int band = band_between(s.rings[j], s.rings[j + 1]);
      for (int i = 0; i < collar.fibre_size(); ++i) lengths[collar.longitudinal_edge(band, i)] *= scale;
      recompute_diagonals(collar, band, lengths);
    }
  }
  SurgeredMetric out = g_tilde;
  out.surface = g_tilde.surface.with_edge_lengths(std::move(lengths));
  out.ell = params.ell;
  out.R = params.R;
  out.stretched = true;
  return out;
}

double cylinder_rim_distance(const SurgeredMetric& metric) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : metric.sides) {
    const auto& lo = metric.collar.ring(s.rings[s.rim_lo]);
    const auto& hi = metric.collar.ring(s.rings[s.rim_hi]);
    best = std::min(best, set_distance(metric.surface, lo, hi));
  }
  return best;
}

std::vector<SurgeredMetric> surgery_family(const TriangulatedSurface& surface, const Collar& collar,
                                           double epsilon, const std::vector<double>& R_list) {
  const auto cutoff = make_cutoff(epsilon);
  const auto g_tilde = cylindrical_interpolation(surface, collar, cutoff);
  std::vector<SurgeredMetric> family(R_list.size(), g_tilde);
  parallel_for(R_list.size(), [&](std::size_t k) {
    family[k] = stretch(g_tilde, {R_list[k], g_tilde.ell}, cutoff);
  });
  return family;
}

namespace {

void fit_line(const std::vector<double>& x, const std::vector<double>& y, double& slope,
              double& intercept) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  slope = sxx > 0 ? sxy / sxx : 0.0;
  intercept = my - slope * mx;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SurgeryReport verify_surgery(const TriangulatedSurface& original,
                             const std::vector<SurgeredMetric>& family, const Cycle& sigma,
                             const Region& omega, const Region& cylinder) {
  SurgeryReport rep;
  const double per0 = perimeter(original, omega);
  const Region outside = complement(original, cylinder);
  const Region omega_c = complement(original, omega);

  std::set<VertexId> sigma_vertices;
  for (EdgeId e : sigma.edges()) {
    sigma_vertices.insert(original.edge(e).v0);
    sigma_vertices.insert(original.edge(e).v1);
  }

  for (const auto& g : family) {
    if (g.surface.edge_count() != original.edge_count()) {
      rep.violations.push_back("metric family does not share the original combinatorics");
      return rep;
    }
    SurgeryRow row;
    row.R = g.R;
    row.perimeter_omega = perimeter(g.surface, omega);
    row.volume_omega = volume(g.surface, omega);
    row.volume_complement = volume(g.surface, omega_c);
    row.volume_cylinder = volume(g.surface, cylinder);
    row.volume_outside_cylinder = volume(g.surface, outside);
    row.rim_distance = cylinder_rim_distance(g);
    rep.rows.push_back(row);

    if (row.perimeter_omega != per0) {
      rep.perimeter_preserved = false;
      rep.violations.push_back("R=" + fmt(g.R) + ": Per(Omega) " + fmt(row.perimeter_omega) +
                               " differs from " + fmt(per0));
    }

    // Edges allowed to change: those of faces in the sub-collar bands.
    std::vector<char> allowed(original.edge_count(), 0);
    double band_max = 0.0;
    for (const auto& s : g.sides) {
      const int a = s.rings.front(), b = s.rings.back();
      const Region bands = g.collar.band_faces(std::min(a, b), std::max(a, b));
      for (FaceId f : bands.faces()) {
        for (EdgeId e : original.face_edges(f)) allowed[e] = 1;
      }
      const int lo = s.rings[s.rim_lo], hi = s.rings[s.rim_hi];
      for (int band = std::min(lo, hi); band < std::max(lo, hi); ++band) {
        band_max = std::max(band_max, original.edge_length(g.collar.longitudinal_edge(band, 0)));
      }
    }
    bool dominated = true, local = true;
    for (EdgeId e = 0; e < original.edge_count(); ++e) {
      const double before = original.edge_length(e);
      const double after = g.surface.edge_length(e);
      if (after < before) dominated = false;
      if (after != before) {
        const auto& k = original.edge(e);
        if (!allowed[e] || sigma_vertices.count(k.v0) || sigma_vertices.count(k.v1)) local = false;
      }
    }
    if (!dominated) {
      rep.dominates = false;
      rep.violations.push_back("R=" + fmt(g.R) + ": some edge is shorter than in the input metric");
    }
    if (!local) {
      rep.local = false;
      rep.violations.push_back("R=" + fmt(g.R) + ": an edge outside the eta > 0 bands changed");
    }
    if (g.stretched && std::abs(row.rim_distance - g.R) > band_max) {
      rep.distance_realized = false;
      rep.violations.push_back("R=" + fmt(g.R) + ": rim distance " + fmt(row.rim_distance) +
                               " is more than one band from R");
    }
  }

  const auto& rows = rep.rows;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (!(rows[k].R > rows[k - 1].R)) {
      rep.violations.push_back("R values are not strictly increasing");
      rep.volumes_grow = false;
      break;
    }
  }
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].volume_outside_cylinder != rows[0].volume_outside_cylinder) {
      rep.outside_volume_constant = false;
      rep.violations.push_back("R=" + fmt(rows[k].R) + ": Vol(M\\T) " +
                               fmt(rows[k].volume_outside_cylinder) + " differs from " +
                               fmt(rows[0].volume_outside_cylinder));
    }
  }

  if (rep.volumes_grow && rows.size() >= 2) {
    auto check = [&](const char* what, auto get) {
      double first_slope = 0.0;
      for (std::size_t k = 1; k < rows.size(); ++k) {
        const double slope = (get(rows[k]) - get(rows[k - 1])) / (rows[k].R - rows[k - 1].R);
        if (k == 1) first_slope = slope;
        if (!(slope > 0.0) || slope < (1.0 - 1e-9) * first_slope) {
          rep.volumes_grow = false;
          rep.violations.push_back(std::string(what) + " does not grow at least linearly near R=" +
                                   fmt(rows[k].R));
          return;
        }
      }
    };
    check("Vol(Omega)", [](const SurgeryRow& r) { return r.volume_omega; });
    check("Vol(M\\Omega)", [](const SurgeryRow& r) { return r.volume_complement; });
    check("Vol(T)", [](const SurgeryRow& r) { return r.volume_cylinder; });

    std::vector<double> x, y;
    double scale = 0.0;
    for (const auto& r : rows) {
      x.push_back(r.R);
      y.push_back(r.volume_cylinder);
      scale = std::max(scale, std::abs(r.volume_cylinder));
    }
    double a = 0, b = 0;
    fit_line(x, y, a, b);
    double worst = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(a * x[k] + b - y[k]));
    rep.cylinder_slope = a;
    rep.cylinder_residual = scale > 0 ? worst / scale : 0.0;
    if (!(a > 0.0) || !(rep.cylinder_residual < 1e-9)) {
      rep.cylinder_affine = false;
      rep.violations.push_back("Vol(T) is not affine in R (slope " + fmt(a) + ", residual " +
                               fmt(rep.cylinder_residual) + ")");
    }
  }
  return rep;
}

WarpedInterval warped_cylindrical_interpolation(const WarpedInterval& w, const CutoffProfile& cutoff) {
  const double eps = cutoff.epsilon();
  if (eps > w.length()) throw PreconditionError("epsilon exceeds the interval length");
  std::vector<double> warp = w.warp();
  double h = 0.0;
  for (int i = 0; i <= w.intervals() && w.grid_point(i) <= eps; ++i) h = std::max(h, warp[i]);
  h = std::max(h, w.warp_at(eps));
  for (int i = 0; i <= w.intervals(); ++i) {
    const double t = cutoff.snap(w.grid_point(i));
    if (t > eps) break;
    const double eta = cutoff(t);
    if (eta == 0.0) continue;
    warp[i] = eta == 1.0 ? h : std::sqrt((1.0 - eta) * warp[i] * warp[i] + eta * h * h);
  }
  return w.with_warp(std::move(warp));
}

WarpedInterval warped_stretch(const WarpedInterval& w_tilde, StretchParams params,
                              const CutoffProfile& cutoff) {
  if (params.R < params.ell || !(params.ell > 0.0)) throw InputError("stretch needs R >= ell > 0");
  if (cutoff.epsilon() > w_tilde.length()) throw PreconditionError("epsilon exceeds the interval length");
  std::vector<double> rho = w_tilde.longitudinal();
  for (int i = 0; i <= w_tilde.intervals(); ++i) {
    const double t = cutoff.snap(w_tilde.grid_point(i));
    if (t > cutoff.epsilon()) break;
    rho[i] *= stretch_factor(cutoff, params, t);
  }
  return w_tilde.with_longitudinal(std::move(rho));
}

double cylinder_length(StretchParams params, const CutoffProfile& cutoff) {
  // rho_R is (R/ell)^2 on the whole plateau, so the integral is exact.
  return params.R * ((cutoff.epsilon() / 3.0) / params.ell);
}

}  // namespace stretchlab
