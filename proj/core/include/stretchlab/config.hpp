#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stretchlab/fixtures.hpp"
#include "stretchlab/solver.hpp"

namespace stretchlab {

enum class GeometryKind { Dumbbell, Mesh };
enum class TargetMode { SigmaVolume, Vcm };

struct GeometryConfig {
  GeometryKind kind = GeometryKind::Dumbbell;
  DumbbellOptions dumbbell;
  std::string mesh_path;    // kind == Mesh
  std::string collar_path;  // kind == Mesh: {"rings": [[...]], "sigma": j}
  std::optional<double> conformal_margin;  // strict-stability perturbation before surgery
};

struct OutputConfig {
  std::string directory = "out";
  std::string prefix = "stretchlab";
};

struct ExperimentConfig {
  GeometryConfig geometry;
  double epsilon = 0.0;
  std::vector<double> R_list;  // ascending, all >= ell = epsilon / 3
  TargetMode mode = TargetMode::SigmaVolume;
  std::optional<int> competitor_ring;  // collar ring realising the competitor cycle (vcm)
  std::optional<double> C;             // per-component volume cap; measured when absent
  SolverSettings solver;
  double relative_volume_tolerance = 0.0;  // > 0: tolerance = value * total area, per row
  OutputConfig output;
  std::string source;  // the TOML text, echoed into reports

  double ell() const { return epsilon / 3.0; }
};

/// Parses TOML with sections [geometry], [surgery], [solver] and [output].
/// Relative mesh and collar paths are resolved against `base_dir`; the
/// output directory is taken as given. The R list may contain
/// the string "ell". Throws InputError on unknown keys or invalid values.
ExperimentConfig parse_config(const std::string& toml_text, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

/// Re-checks the invariants of a programmatically built config.
void validate_config(const ExperimentConfig& config);

}  // namespace stretchlab
