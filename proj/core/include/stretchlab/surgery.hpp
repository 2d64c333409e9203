#pragma once

#include <array>
#include <string>
#include <vector>

#include "stretchlab/collar.hpp"
#include "stretchlab/cutoff.hpp"
#include "stretchlab/surface.hpp"
#include "stretchlab/warped.hpp"

namespace stretchlab {

struct StretchParams {
  double R = 1.0;
  double ell = 1.0;
};

/// Surgery data for the sub-collar Gamma x [0, eps] on one side of Sigma.
struct SideSurgery {
  Side side = Side::Minus;
  std::vector<int> rings;      // collar ring indices, Gamma first, last one at t = eps
  std::vector<double> t;       // snapped distance of each ring from Gamma
  int rim_lo = 0;              // position in `rings` of t = eps/3
  int rim_hi = 0;              // position in `rings` of t = 2eps/3
  std::vector<double> h_gamma; // dominating fibre length per fibre position
};

struct SurgeredMetric {
  TriangulatedSurface surface;
  std::vector<double> base_lengths;  // lengths of the geometry the pipeline started from
  Collar collar;
  double epsilon = 0.0;
  double ell = 0.0;
  double R = 0.0;  // equals ell before stretching
  bool stretched = false;
  std::array<SideSurgery, 2> sides;
  Region cylinder;  // T: bands between the eps/3 and 2eps/3 rings on both sides
};

/// Fibre lengths on ring t become sqrt((1 - eta) l^2 + eta h_Gamma^2);
/// diagonals in touched bands are recomputed as hypotenuses. Each side
/// needs rings at eps/3, 2eps/3 and eps (to 1e-9 eps) with eps short of
/// Sigma.
SurgeredMetric cylindrical_interpolation(const TriangulatedSurface& surface, const Collar& collar,
                                         const CutoffProfile& cutoff);

/// Scales the longitudinal edge of each sub-collar band by sqrt(rho_R) at
/// the band midpoint, rho_R = 1 + ((R/ell)^2 - 1) eta.
SurgeredMetric stretch(const SurgeredMetric& g_tilde, StretchParams params,
                       const CutoffProfile& cutoff);

double stretch_factor(const CutoffProfile& cutoff, StretchParams params, double t);

/// Shortest path between the two rims of T, minimum over both sides.
double cylinder_rim_distance(const SurgeredMetric& metric);

/// g_R for every R in the list, computed concurrently.
std::vector<SurgeredMetric> surgery_family(const TriangulatedSurface& surface, const Collar& collar,
                                           double epsilon, const std::vector<double>& R_list);

struct SurgeryRow {
  double R = 0.0;
  double perimeter_omega = 0.0;
  double volume_omega = 0.0;
  double volume_complement = 0.0;
  double volume_cylinder = 0.0;
  double volume_outside_cylinder = 0.0;
  double rim_distance = 0.0;
};

struct SurgeryReport {
  std::vector<SurgeryRow> rows;
  bool perimeter_preserved = true;     // property 1, bitwise
  bool volumes_grow = true;            // property 2
  bool outside_volume_constant = true; // property 3, bitwise
  bool cylinder_affine = true;         // Vol(T) = aR + b
  double cylinder_slope = 0.0;
  double cylinder_residual = 0.0;      // max |fit error| / max Vol(T)
  bool dominates = true;               // every edge >= original
  bool local = true;                   // changes confined to eta > 0 bands, Sigma untouched
  bool distance_realized = true;       // |rim distance - R| <= one band
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

SurgeryReport verify_surgery(const TriangulatedSurface& original,
                             const std::vector<SurgeredMetric>& family, const Cycle& sigma,
                             const Region& omega, const Region& cylinder);

/// Warped model, Gamma at t = 0: fibre warp interpolated towards the
/// maximum of the warp over [0, eps].
WarpedInterval warped_cylindrical_interpolation(const WarpedInterval& w, const CutoffProfile& cutoff);
/// Warped model: longitudinal factor rho_R sampled on the grid.
WarpedInterval warped_stretch(const WarpedInterval& w_tilde, StretchParams params,
                              const CutoffProfile& cutoff);
/// Closed form of the integral of sqrt(rho_R) over [eps/3, 2eps/3].
double cylinder_length(StretchParams params, const CutoffProfile& cutoff);

}  // namespace stretchlab
