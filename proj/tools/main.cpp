#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "stretchlab/errors.hpp"

int main(int argc, char** argv) {
  namespace cli = stretchlab::cli;
  CLI::App app{"stretchlab: metric surgery and discrete isoperimetry experiments"};
  app.require_subcommand(1);

  cli::CommonOptions common;
  std::optional<std::string> out_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", common.config, "TOML config")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", out_dir, "output directory (overrides [output].directory)");
  };

  auto* surgery = app.add_subcommand("surgery", "apply the surgery for every R and export the metrics");
  add_common(surgery);
  auto* sweep = app.add_subcommand("sweep", "full stretch experiment over the R list");
  add_common(sweep);
  auto* vcm = app.add_subcommand("vcm", "sweep with a competitor ring as target");
  add_common(vcm);
  std::optional<int> competitor;
  vcm->add_option("--competitor-ring", competitor, "collar ring index (overrides the config)");

  cli::SolveOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "volume-constrained minimiser on a mesh");
  solve->add_option("mesh", solve_opts.mesh, ".off or .json mesh")->required()->check(CLI::ExistingFile);
  solve->add_option("--volume", solve_opts.volume, "target volume");
  solve->add_option("--fraction", solve_opts.fraction, "target as a fraction of the total area");
  solve->add_option("--tolerance", solve_opts.tolerance, "absolute volume tolerance");
  solve->add_option("--relative-tolerance", solve_opts.relative_tolerance, "tolerance relative to the total area");
  solve->add_flag("--exact", solve_opts.exact, "certify with branch and bound");
  solve->add_flag("!--no-cross-validate", solve_opts.cross_validate, "skip the brute-force cross-check");
  solve->add_option("--profile", solve_opts.profile, "sample the isoperimetric profile instead");
  solve->add_option("-o,--out", solve_opts.out_dir, "output directory");
  solve->add_option("--prefix", solve_opts.prefix, "output file prefix");

  cli::ConesOptions cone_opts;
  auto* cones = app.add_subcommand("cones", "stability table for S^p x S^q cones");
  cones->add_option("--max-sum", cone_opts.max_sum, "largest p + q")->check(CLI::Range(2, 64));
  cones->add_option("--modes", cone_opts.modes, "link eigenvalues per cone")->check(CLI::PositiveNumber);
  cones->add_option("--mesh-resolution", cone_opts.mesh_resolution, "Clifford torus grid, 0 to skip");
  cones->add_option("-o,--out", cone_opts.out_dir, "output directory");

  cli::ConformalCheckOptions conf_opts;
  auto* conformal = app.add_subcommand("conformal-check", "formula vs finite differences on warped models");
  conformal->add_option("--step", conf_opts.h, "finite-difference step")->check(CLI::PositiveNumber);
  conformal->add_option("--tolerance", conf_opts.tolerance, "allowed residual");
  conformal->add_option("-o,--out", conf_opts.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);
  common.out_dir = out_dir;

  try {
    if (*surgery) return cli::run_surgery(common);
    if (*sweep) return cli::run_sweep(common);
    if (*vcm) return cli::run_vcm(common, competitor);
    if (*solve) return cli::run_solve(solve_opts);
    if (*cones) return cli::run_cones(cone_opts);
    if (*conformal) return cli::run_conformal_check(conf_opts);
  } catch (const stretchlab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 3;
  }
  return 1;
}
