#include "stretchlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "stretchlab/conformal.hpp"
#include "stretchlab/cutoff.hpp"
#include "stretchlab/errors.hpp"
#include "stretchlab/fixtures.hpp"
#include "stretchlab/measure.hpp"
#include "stretchlab/mesh_io.hpp"
#include "stretchlab/parallel.hpp"

namespace stretchlab {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int ring_at(const Collar& collar, double epsilon, Side side) {
  const auto walk = collar.rings_towards_sigma(side);
  const double start = collar.offset(walk.front());
  for (int j : walk) {
    if (std::abs(std::abs(collar.offset(j) - start) - epsilon) <= 1e-9 * epsilon) return j;
  }
  throw StructuralError("no collar ring at distance eps from the boundary ring");
}

// Side of `cycle` containing the first face of band 0.
Region gamma_minus_side(const TriangulatedSurface& surface, const Collar& collar, const Cycle& cycle) {
  const auto sep = separates(surface, cycle);
  if (!sep.separates) throw StructuralError("target cycle does not separate the surface");
  const FaceId anchor = collar.quad(0, 0).faces[0];
  return sep.side_a.contains(anchor) ? sep.side_a : sep.side_b;
}

}  // namespace

Collar inner_collar(const TriangulatedSurface& surface, const Collar& collar, double epsilon) {
  const int lo = ring_at(collar, epsilon, Side::Minus);
  const int hi = ring_at(collar, epsilon, Side::Plus);
  const int sig = collar.sigma_index();
  if (!(lo < sig && sig < hi)) throw StructuralError("eps rings do not enclose Sigma");
  std::vector<std::vector<VertexId>> rings(collar.rings().begin() + lo, collar.rings().begin() + hi + 1);
  return make_collar(surface, std::move(rings), sig - lo);
}

ExperimentGeometry build_geometry(const ExperimentConfig& config) {
  struct Loaded {
    TriangulatedSurface surface;
    std::vector<std::vector<VertexId>> rings;
    int sigma_index;
  };
  auto load = [&]() -> Loaded {
    if (config.geometry.kind == GeometryKind::Dumbbell) {
      Dumbbell d = build_dumbbell(config.geometry.dumbbell);
      return {std::move(d.surface), d.collar.rings(), d.collar.sigma_index()};
    }
    TriangulatedSurface surface = read_mesh(config.geometry.mesh_path).surface;
    const Collar c = read_collar(surface, config.geometry.collar_path);
    return {std::move(surface), c.rings(), c.sigma_index()};
  };
  auto [surface, rings, sigma_index] = load();
  Collar collar = make_collar(surface, rings, sigma_index);

  ExperimentGeometry g{surface, collar, collar.sigma(), sigma_side(surface, collar, Side::Minus)};
  g.stability_before = stability_form(surface, collar).lambda_min;
  g.stability_after = g.stability_before;
  if (config.geometry.conformal_margin) {
    const Collar inner = inner_collar(surface, collar, config.epsilon);
    const auto stab = make_strictly_stable(surface, inner, *config.geometry.conformal_margin);
    g.surface = apply_conformal(surface, stab.factor.values);
    g.collar = make_collar(g.surface, rings, sigma_index);
    g.stability_after = stab.form.lambda_min;
    g.conformal_quadratic = stab.factor.quadratic;
  }
  return g;
}

double measured_component_cap(const TriangulatedSurface& surface, const Collar& collar, double D) {
  if (!(D > 0.0)) return 0.0;
  std::vector<VertexId> centres;
  for (const auto& ring : collar.rings()) centres.insert(centres.end(), ring.begin(), ring.end());
  std::vector<double> caps(centres.size(), 0.0);
  parallel_for(centres.size(), [&](std::size_t k) {
    const VertexId v = centres[k];
    const auto dist = vertex_distances(surface, std::span<const VertexId>(&v, 1));
    double a = 0.0;
    for (FaceId f = 0; f < surface.face_count(); ++f) {
      const auto& t = surface.face(f);
      if (dist[t[0]] <= D && dist[t[1]] <= D && dist[t[2]] <= D) a += surface.face_area(f);
    }
    caps[k] = a;
  });
  return *std::max_element(caps.begin(), caps.end());
}

namespace {

ExperimentRecord run(const ExperimentConfig& config, bool vcm) {
  validate_config(config);
  const ExperimentGeometry geo = build_geometry(config);

  ExperimentRecord rec;
  rec.mode = vcm ? TargetMode::Vcm : TargetMode::SigmaVolume;
  rec.epsilon = config.epsilon;
  rec.ell = config.ell();
  rec.face_count = geo.surface.face_count();
  rec.per_sigma_original = perimeter(geo.surface, geo.omega);
  rec.stability_before = geo.stability_before;
  rec.stability_after = geo.stability_after;
  rec.conformal_quadratic = geo.conformal_quadratic;

  Cycle target_cycle = geo.sigma;
  Region target_region = geo.omega;
  if (vcm) {
    if (!config.competitor_ring) throw InputError("vcm mode needs a competitor ring");
    const int j = *config.competitor_ring;
    if (j <= 0 || j >= geo.collar.ring_count() - 1) throw InputError("competitor ring must be an interior collar ring");
    target_cycle = geo.collar.ring_cycle(j);
    if (!homologous_to_sigma(geo.surface, geo.collar, target_cycle)) {
      throw PreconditionError("competitor cycle is not homologous to Sigma in the collar");
    }
    target_region = gamma_minus_side(geo.surface, geo.collar, target_cycle);
    rec.competitor_ring = j;
  }
  const Cycle target_edges = cut_edges(geo.surface, target_region);

  const auto family = surgery_family(geo.surface, geo.collar, config.epsilon, config.R_list);
  const Region cylinder = family.empty() ? Region{} : family.front().cylinder;
  rec.surgery = verify_surgery(geo.surface, family, geo.sigma, geo.omega, cylinder);

  const Region omega_c = complement(geo.surface, geo.omega);
  rec.rows.resize(family.size());
  parallel_for(family.size(), [&](std::size_t k) {
    const auto& g = family[k];
    const auto& s = g.surface;
    ExperimentRow& row = rec.rows[k];
    row.R = config.R_list[k];
    row.per_sigma = perimeter(s, geo.omega);
    row.per_target = perimeter(s, target_region);
    row.vol_omega = volume(s, geo.omega);
    row.vol_complement = volume(s, omega_c);
    row.vol_total = s.total_area();
    row.vol_target = volume(s, target_region);
    row.vol_cylinder = volume(s, cylinder);
    row.vol_outside_cylinder = volume(s, complement(s, cylinder));
    row.rim_distance = rec.surgery.rows.size() > k ? rec.surgery.rows[k].rim_distance : 0.0;
    row.property1 = row.per_sigma == rec.per_sigma_original;
    row.bookkeeping_residual = std::abs(row.vol_omega + row.vol_complement - row.vol_total);
    row.bookkeeping = row.bookkeeping_residual <= 1e-12 * row.vol_total;
    row.area_gap = row.per_target - row.per_sigma;

    SolverSettings settings = config.solver;
    if (config.relative_volume_tolerance > 0.0) {
      settings.volume_tolerance = config.relative_volume_tolerance * row.vol_total;
    }
    row.volume_tolerance = settings.volume_tolerance.value_or(default_volume_tolerance(s));
    try {
      row.result = constrained_min_at_volume(s, row.vol_target, settings);
      row.solved = true;
    } catch (const Error& e) {
      row.error = e.what();
      return;
    }
    row.boundary_is_target = cut_edges(s, row.result.region) == target_edges;
    const double D = [&] {
      double d = 0.0;
      for (const auto& c : boundary_components(s, row.result.region)) d = std::max(d, c.diameter);
      return d;
    }();
    row.C = config.C ? *config.C : measured_component_cap(s, g.collar, D);
    row.bounds = bounds_report(s, row.result.region, cylinder, row.C);
    if (vcm && !(row.bounds.components > 0 && row.area_gap < row.bounds.delta)) {
      row.skipped = true;
      row.skip_reason = "area gap " + fmt(row.area_gap) + " not below measured delta " + fmt(row.bounds.delta);
    }
  });

  // Invariant checks, assembled in R order.
  bool seen_target = false;
  for (const auto& row : rec.rows) {
    const std::string tag = "R=" + fmt(row.R) + ": ";
    if (!row.property1) {
      rec.property1_ok = false;
      rec.violations.push_back(tag + "Per(Omega) changed under surgery");
    }
    if (!row.bookkeeping) {
      rec.bookkeeping_ok = false;
      rec.violations.push_back(tag + "Vol(Omega) + Vol(M \\ Omega) != Vol(M), residual " +
                               fmt(row.bookkeeping_residual));
    }
    if (!row.error.empty()) rec.violations.push_back(tag + "solver error: " + row.error);
    if (!row.solved || row.skipped) continue;
    if (row.boundary_is_target) {
      seen_target = true;
    } else {
      if (seen_target) {
        rec.threshold_monotone = false;
        rec.violations.push_back(tag + "boundary is no longer the target after matching at a smaller R");
      }
      if (row.bounds.exceeds_bound) {
        rec.dichotomy_ok = false;
        rec.violations.push_back(tag + "min side volume " + fmt(row.bounds.min_side_volume) +
                                 " exceeds Vol(M \\ T) + C L = " + fmt(row.bounds.complement_bound));
      }
    }
    if (!row.result.certified_optimal) rec.anomalies.push_back(tag + "minimiser not certified");
  }
  for (std::size_t k = 1; k < rec.rows.size(); ++k) {
    if (rec.rows[k].vol_outside_cylinder != rec.rows[0].vol_outside_cylinder) rec.outside_constant = false;
  }
  for (const auto& v : rec.surgery.violations) rec.violations.push_back("surgery: " + v);

  // R*: first tested R from which every row matches the target.
  for (std::size_t k = rec.rows.size(); k-- > 0;) {
    const auto& row = rec.rows[k];
    if (!row.solved || row.skipped || !row.boundary_is_target) break;
    rec.R_star = row.R;
  }
  return rec;
}

}  // namespace

ExperimentRecord run_stretch_experiment(const ExperimentConfig& config) { return run(config, false); }

ExperimentRecord run_vcm_experiment(const ExperimentConfig& config) { return run(config, true); }

ExperimentRecord run_experiment(const ExperimentConfig& config) {
  return config.mode == TargetMode::Vcm ? run_vcm_experiment(config) : run_stretch_experiment(config);
}

}  // namespace stretchlab
