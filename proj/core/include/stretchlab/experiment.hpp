#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stretchlab/collar.hpp"
#include "stretchlab/config.hpp"
#include "stretchlab/solver.hpp"
#include "stretchlab/surface.hpp"
#include "stretchlab/surgery.hpp"

namespace stretchlab {

/// The metric g the surgery starts from, with its collar.
struct ExperimentGeometry {
  TriangulatedSurface surface;
  Collar collar;
  Cycle sigma;
  Region omega;
  // Smallest eigenvalue of the stability form of Sigma before and after the
  // conformal perturbation (equal when none is configured).
  double stability_before = 0.0;
  double stability_after = 0.0;
  double conformal_quadratic = 0.0;
};

/// Builds the dumbbell or loads mesh + collar, then applies the conformal
/// perturbation on the collar strictly between the two eps rings.
ExperimentGeometry build_geometry(const ExperimentConfig& config);

/// Collar rings between the eps ring on each side (inclusive), with Sigma
/// re-indexed. Throws StructuralError when a side has no ring at eps.
Collar inner_collar(const TriangulatedSurface& surface, const Collar& collar, double epsilon);

/// Largest face-area sum within distance D of a collar vertex.
double measured_component_cap(const TriangulatedSurface& surface, const Collar& collar, double D);

struct ExperimentRow {
  double R = 0.0;
  double per_target = 0.0;   // Per_{g_R} of the target cycle (Sigma, or the competitor)
  double per_sigma = 0.0;    // Per_{g_R}(Omega)
  double vol_target = 0.0;   // volume the solver is asked for
  double vol_omega = 0.0;
  double vol_complement = 0.0;
  double vol_total = 0.0;
  double vol_cylinder = 0.0;
  double vol_outside_cylinder = 0.0;
  double rim_distance = 0.0;
  double volume_tolerance = 0.0;

  bool solved = false;
  std::string error;
  IsoPoint result;
  bool boundary_is_target = false;  // exact edge-set equality
  BoundsReport bounds;
  double C = 0.0;

  bool property1 = false;     // Per_{g_R}(Omega) == Per_g(Omega), bitwise
  double bookkeeping_residual = 0.0;  // |Vol(Omega) + Vol(M \ Omega) - Vol(M)|
  bool bookkeeping = false;

  // vcm rows
  bool skipped = false;
  std::string skip_reason;
  double area_gap = 0.0;  // Per(target) - Per(Omega)
};

struct ExperimentRecord {
  TargetMode mode = TargetMode::SigmaVolume;
  double epsilon = 0.0;
  double ell = 0.0;
  int face_count = 0;
  double per_sigma_original = 0.0;
  std::optional<int> competitor_ring;
  double stability_before = 0.0;
  double stability_after = 0.0;
  double conformal_quadratic = 0.0;

  std::vector<ExperimentRow> rows;
  std::optional<double> R_star;  // relative to the tested grid only

  SurgeryReport surgery;
  bool property1_ok = true;
  bool threshold_monotone = true;
  bool bookkeeping_ok = true;
  bool outside_constant = true;
  bool dichotomy_ok = true;
  std::vector<std::string> violations;  // failed invariant checks
  std::vector<std::string> anomalies;   // reported, not failing

  bool ok() const { return violations.empty(); }
};

/// Theorem pipeline: surgery per R, then the constrained minimiser at
/// Vol_{g_R}(Omega) compared against Sigma. Rows run concurrently.
ExperimentRecord run_stretch_experiment(const ExperimentConfig& config);

/// Same sweep with the competitor ring as target. Rows where the area gap
/// is not below the measured delta are recorded as skipped.
ExperimentRecord run_vcm_experiment(const ExperimentConfig& config);

/// Dispatches on config.mode.
ExperimentRecord run_experiment(const ExperimentConfig& config);

}  // namespace stretchlab
