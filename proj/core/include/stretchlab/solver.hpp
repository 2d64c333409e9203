#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stretchlab/surface.hpp"

namespace stretchlab {

enum class Method { Brute, Mincut, Repaired, Exact };

const char* to_string(Method m);

struct IsoPoint {
  double volume = 0.0;
  double perimeter = 0.0;
  Region region;
  Method method = Method::Mincut;
  bool certified_optimal = false;
  double lambda = 0.0;  // multiplier that produced the region (min-cut points)
};

/// Brute-force default: half the smallest face area.
double default_volume_tolerance(const TriangulatedSurface& surface);

/// Exhaustive search over all face subsets (Gray code order); ties on the
/// exact perimeter go to the smallest region in canonical order.
IsoPoint brute_force_min(const TriangulatedSurface& surface, double target_volume,
                         std::optional<double> volume_tolerance = std::nullopt, int face_cap = 24);

/// Global minimiser of Per(E) - lambda Vol(E), smallest such E. Faces in
/// `fixed_in` / `fixed_out` are forced into / out of E.
IsoPoint lagrangian_cut(const TriangulatedSurface& surface, double lambda,
                        const std::vector<FaceId>& fixed_in = {},
                        const std::vector<FaceId>& fixed_out = {});

/// One Lagrangian cut per lambda, in input order, computed concurrently.
std::vector<IsoPoint> mincut_sweep(const TriangulatedSurface& surface,
                                   const std::vector<double>& lambda_grid);

struct SolverSettings {
  std::optional<double> volume_tolerance;  // default: half the smallest face area
  bool cross_validate = true;  // run brute force when the surface is small enough
  int brute_face_cap = 24;
  bool seeded = true;          // seeded min-cut candidates on top of the plain sweep
  int seed_count = 6;          // farthest-point seed faces
  int bisection_steps = 50;
  int repair_budget = 20000;   // single-face moves
  bool exact = false;          // branch and bound certification
  long exact_node_budget = 2000000;
};

/// Volume-constrained minimiser at `target_volume`: certified when it comes
/// from the plain sweep, from brute force or from a completed branch and
/// bound; otherwise the best seeded cut or repaired region, uncertified.
IsoPoint constrained_min_at_volume(const TriangulatedSurface& surface, double target_volume,
                                   const SolverSettings& settings = {});

/// Steepest-descent exchange repair towards |Vol - target| <= tolerance.
/// Returns nullopt when the budget runs out before the volume is met.
std::optional<IsoPoint> repair_region(const TriangulatedSurface& surface, const Region& start,
                                      double target_volume, double tolerance, int budget);

struct BoundsReport {
  double delta = 0.0;          // shortest boundary component
  double diameter = 0.0;       // D: largest component diameter
  int components = 0;          // L
  double outside_volume = 0.0; // Vol(M \ T)
  double complement_bound = 0.0;
  double min_side_volume = 0.0;  // min(Vol(E), Vol(M \ E))
  bool exceeds_bound = false;    // min side > Vol(M \ T) + C L
};

BoundsReport bounds_report(const TriangulatedSurface& surface, const Region& region,
                           const Region& cylinder, double C_per_component);

/// Minimisers on an even volume grid over [0, total/2] plus their
/// complements, sorted by volume.
std::vector<IsoPoint> isoperimetric_profile(const TriangulatedSurface& surface, int samples,
                                            const SolverSettings& settings = {});

/// Canonical region order: fewer faces first, then lexicographic.
bool canonical_less(const Region& a, const Region& b);

}  // namespace stretchlab
