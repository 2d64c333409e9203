#pragma once

#include <optional>
#include <string>

// Each command returns the process exit code: 0 iff every invariant check
// it runs passes.
namespace stretchlab::cli {

struct CommonOptions {
  std::string config;
  std::optional<std::string> out_dir;  // overrides [output].directory
};

int run_surgery(const CommonOptions& opts);
int run_sweep(const CommonOptions& opts);
int run_vcm(const CommonOptions& opts, std::optional<int> competitor_ring);

struct SolveOptions {
  std::string mesh;
  std::optional<double> volume;
  std::optional<double> fraction;
  std::optional<double> tolerance;
  std::optional<double> relative_tolerance;
  bool exact = false;
  bool cross_validate = true;
  int profile = 0;  // > 0: isoperimetric profile with this many samples
  std::string out_dir = "out";
  std::string prefix = "solve";
};
int run_solve(const SolveOptions& opts);

struct ConesOptions {
  int max_sum = 12;
  int modes = 8;
  int mesh_resolution = 24;  // Clifford torus grid; 0 skips the mesh check
  std::string out_dir = "out";
  std::string prefix = "cones";
};
int run_cones(const ConesOptions& opts);

struct ConformalCheckOptions {
  double h = 1e-3;
  double tolerance = 1e-6;
  std::string out_dir = "out";
  std::string prefix = "conformal";
};
int run_conformal_check(const ConformalCheckOptions& opts);

}  // namespace stretchlab::cli
