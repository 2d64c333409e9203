#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stretchlab/cones.hpp"
#include "stretchlab/config.hpp"
#include "stretchlab/conformal.hpp"
#include "stretchlab/cutoff.hpp"
#include "stretchlab/errors.hpp"
#include "stretchlab/experiment.hpp"
#include "stretchlab/fixtures.hpp"
#include "stretchlab/measure.hpp"
#include "stretchlab/mesh_io.hpp"
#include "stretchlab/report.hpp"
#include "stretchlab/solver.hpp"
#include "stretchlab/surgery.hpp"

namespace stretchlab::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

ExperimentConfig load(const CommonOptions& opts) {
  ExperimentConfig c = load_config(opts.config);
  if (opts.out_dir) c.output.directory = *opts.out_dir;
  return c;
}

void print_record(const ExperimentRecord& rec) {
  std::printf("faces %d, eps %s, ell %s, Per(Sigma) %s\n", rec.face_count, csv_number(rec.epsilon).c_str(),
              csv_number(rec.ell).c_str(), csv_number(rec.per_sigma_original).c_str());
  for (const auto& r : rec.rows) {
    std::printf("R=%-10s target Per %-12.8g", csv_number(r.R).c_str(), r.per_target);
    if (r.solved) {
      std::printf(" min Per %-12.8g %-8s %s boundary%s target", r.result.perimeter, to_string(r.result.method),
                  r.result.certified_optimal ? "certified  " : "uncertified", r.boundary_is_target ? " ==" : " !=");
    } else {
      std::printf(" error: %s", r.error.c_str());
    }
    if (r.skipped) std::printf(" [skipped: %s]", r.skip_reason.c_str());
    std::printf("\n");
  }
  if (rec.R_star) {
    std::printf("R* = %s\n", csv_number(*rec.R_star).c_str());
  } else {
    std::printf("R* = none in the tested grid\n");
  }
  for (const auto& v : rec.violations) std::printf("FAILED CHECK %s\n", v.c_str());
  for (const auto& a : rec.anomalies) std::printf("note: %s\n", a.c_str());
}

int experiment(ExperimentConfig c) {
  const ExperimentRecord rec = run_experiment(c);
  print_record(rec);
  for (const auto& p : emit_report(rec, c)) std::printf("wrote %s\n", p.c_str());
  return rec.ok() ? 0 : 1;
}

}  // namespace

int run_surgery(const CommonOptions& opts) {
  const ExperimentConfig c = load(opts);
  const ExperimentGeometry geo = build_geometry(c);
  const auto family = surgery_family(geo.surface, geo.collar, c.epsilon, c.R_list);
  const Region cylinder = family.empty() ? Region{} : family.front().cylinder;
  const SurgeryReport rep = verify_surgery(geo.surface, family, geo.sigma, geo.omega, cylinder);

  const std::string dir = c.output.directory;
  const std::string prefix = c.output.prefix;
  write_mesh(join(dir, prefix + "_g.json"), geo.surface, {{"epsilon", c.epsilon}, {"stage", std::string("input")}});
  write_text_file(join(dir, prefix + "_collar.json"), collar_to_json(geo.collar));
  for (std::size_t k = 0; k < family.size(); ++k) {
    Provenance prov{{"R", family[k].R}, {"epsilon", c.epsilon}, {"ell", family[k].ell},
                    {"stage", std::string("stretched")}};
    write_mesh(join(dir, prefix + "_g_R" + std::to_string(k) + ".json"), family[k].surface, prov);
  }
  write_text_file(join(dir, prefix + "_cylinder.json"), region_to_json(cylinder));

  std::ostringstream csv;
  csv << "R,perimeter_omega,volume_omega,volume_complement,volume_cylinder,volume_outside_cylinder,rim_distance\n";
  for (const auto& r : rep.rows) {
    csv << csv_number(r.R) << "," << csv_number(r.perimeter_omega) << "," << csv_number(r.volume_omega) << ","
        << csv_number(r.volume_complement) << "," << csv_number(r.volume_cylinder) << ","
        << csv_number(r.volume_outside_cylinder) << "," << csv_number(r.rim_distance) << "\n";
  }
  write_text_file(join(dir, prefix + "_surgery.csv"), csv.str());
  json j{{"perimeter_preserved", rep.perimeter_preserved},
         {"volumes_grow", rep.volumes_grow},
         {"outside_volume_constant", rep.outside_volume_constant},
         {"cylinder_affine", rep.cylinder_affine},
         {"cylinder_slope", rep.cylinder_slope},
         {"cylinder_residual", rep.cylinder_residual},
         {"dominates", rep.dominates},
         {"local", rep.local},
         {"distance_realized", rep.distance_realized},
         {"violations", rep.violations},
         {"ok", rep.ok()},
         {"config", c.source}};
  write_text_file(join(dir, prefix + "_surgery.json"), j.dump(2) + "\n");

  std::printf("surgery on %d faces, %zu metrics written to %s\n", geo.surface.face_count(), family.size(),
              dir.c_str());
  for (const auto& v : rep.violations) std::printf("FAILED CHECK %s\n", v.c_str());
  return rep.ok() ? 0 : 1;
}

int run_sweep(const CommonOptions& opts) {
  ExperimentConfig c = load(opts);
  c.mode = TargetMode::SigmaVolume;
  return experiment(std::move(c));
}

int run_vcm(const CommonOptions& opts, std::optional<int> competitor_ring) {
  ExperimentConfig c = load(opts);
  c.mode = TargetMode::Vcm;
  if (competitor_ring) c.competitor_ring = competitor_ring;
  validate_config(c);
  return experiment(std::move(c));
}

int run_solve(const SolveOptions& o) {
  const MeshData mesh = read_mesh(o.mesh);
  const auto& s = mesh.surface;
  SolverSettings st;
  st.exact = o.exact;
  st.cross_validate = o.cross_validate;
  if (o.tolerance) st.volume_tolerance = *o.tolerance;
  if (o.relative_tolerance) st.volume_tolerance = *o.relative_tolerance * s.total_area();

  auto point_json = [](const IsoPoint& p) {
    return json{{"volume", p.volume},
                {"perimeter", p.perimeter},
                {"method", to_string(p.method)},
                {"certified", p.certified_optimal},
                {"lambda", p.lambda},
                {"region", std::vector<int>(p.region.faces().begin(), p.region.faces().end())}};
  };

  if (o.profile > 0) {
    const auto profile = isoperimetric_profile(s, o.profile, st);
    std::ostringstream csv;
    csv << "volume,perimeter,method,certified,faces\n";
    json pts = json::array();
    for (const auto& p : profile) {
      csv << csv_number(p.volume) << "," << csv_number(p.perimeter) << "," << to_string(p.method) << ","
          << (p.certified_optimal ? 1 : 0) << "," << p.region.size() << "\n";
      pts.push_back(point_json(p));
      std::printf("V %-14.8g P %-14.8g %s%s\n", p.volume, p.perimeter, to_string(p.method),
                  p.certified_optimal ? " certified" : "");
    }
    write_text_file(join(o.out_dir, o.prefix + "_profile.csv"), csv.str());
    write_text_file(join(o.out_dir, o.prefix + "_profile.json"), json{{"points", pts}}.dump(2) + "\n");
    return 0;
  }

  if (o.volume.has_value() == o.fraction.has_value()) {
    throw InputError("give exactly one of --volume and --fraction");
  }
  const double target = o.volume ? *o.volume : *o.fraction * s.total_area();
  const IsoPoint p = constrained_min_at_volume(s, target, st);
  std::printf("target %.17g: volume %.17g perimeter %.17g (%s%s)\n", target, p.volume, p.perimeter,
              to_string(p.method), p.certified_optimal ? ", certified" : "");
  json j = point_json(p);
  j["target"] = target;
  j["faces"] = s.face_count();
  write_text_file(join(o.out_dir, o.prefix + ".json"), j.dump(2) + "\n");
  return 0;
}

int run_cones(const ConesOptions& o) {
  bool ok = true;
  std::ostringstream csv;
  csv << "p,q,n,mu1,threshold,class,law_strictly_stable,agrees,gamma_minus,gamma_plus\n";
  json rows = json::array();
  for (int p = 1; p <= o.max_sum / 2; ++p) {
    for (int q = p; p + q <= o.max_sum; ++q) {
      MinimalCone cone{p + q + 2, ProductOfSpheres{p, q}, false, std::nullopt};
      const auto v = classify_stability(cone, product_link_spectrum(p, q, o.modes));
      const int s = p + q;
      const bool law = 4 * s < (s - 1) * (s - 1);
      const bool agrees = (v.cls == StabilityClass::StrictlyStable) == law;
      ok = ok && agrees;
      const double gm = v.exponents.empty() ? NAN : v.exponents.front().gamma_minus;
      const double gp = v.exponents.empty() ? NAN : v.exponents.front().gamma_plus;
      csv << p << "," << q << "," << v.n << "," << csv_number(v.mu1) << "," << csv_number(v.threshold) << ","
          << to_string(v.cls) << "," << (law ? 1 : 0) << "," << (agrees ? 1 : 0) << ","
          << (v.exponents.empty() ? "" : csv_number(gm)) << "," << (v.exponents.empty() ? "" : csv_number(gp))
          << "\n";
      rows.push_back({{"p", p}, {"q", q}, {"n", v.n}, {"mu1", v.mu1}, {"threshold", v.threshold},
                      {"class", to_string(v.cls)}, {"agrees", agrees}});
      std::printf("S^%d x S^%-2d n=%-2d mu1=%-6g threshold=%-8g %s%s\n", p, q, v.n, v.mu1, v.threshold,
                  to_string(v.cls), agrees ? "" : "  DISAGREES WITH CLOSED FORM");
    }
  }
  json summary{{"table", rows}};
  if (o.mesh_resolution > 0) {
    const double r = std::sqrt(0.5);
    MeshedLink link{product_torus(o.mesh_resolution, r, r), {}};
    link.second_fundamental_sq.assign(link.mesh.vertex_count(), 2.0);
    const auto spec = meshed_link_spectrum(link, 1);
    const double mu1 = spec.eigenvalues.front();
    const bool close = std::abs(mu1 + 2.0) <= 1e-2;
    ok = ok && close;
    summary["clifford_mesh"] = {{"resolution", o.mesh_resolution}, {"mu1", mu1}, {"within_1e-2", close}};
    std::printf("meshed Clifford torus (%d x %d): mu1 = %.12g%s\n", o.mesh_resolution, o.mesh_resolution, mu1,
                close ? "" : "  OUTSIDE 1e-2 OF -2");
  }
  summary["ok"] = ok;
  write_text_file(join(o.out_dir, o.prefix + ".csv"), csv.str());
  write_text_file(join(o.out_dir, o.prefix + ".json"), summary.dump(2) + "\n");
  return ok ? 0 : 1;
}

int run_conformal_check(const ConformalCheckOptions& o) {
  struct Case {
    const char* name;
    Jet1D warp;
  };
  const std::vector<Case> cases{
      {"sphere", {[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
                  [](double t) { return -std::sin(t); }}},
      {"cylinder", {[](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }}},
      {"neck", {[](double t) { return std::cosh(t); }, [](double t) { return std::sinh(t); },
                [](double t) { return std::cosh(t); }}},
  };
  const Jet1D factor{[](double t) { return 0.1 * std::sin(t) + 0.05 * t * t; },
                     [](double t) { return 0.1 * std::cos(t) + 0.1 * t; },
                     [](double t) { return -0.1 * std::sin(t) + 0.1; }};
  bool ok = true;
  std::ostringstream csv;
  csv << "case,n,t,h,H_formula,H_fd,H_residual,ric_formula,ric_fd,ric_residual,residual_half_h,order_ok\n";
  for (const auto& c : cases) {
    for (int n : {1, 2, 3}) {
      for (double t : {0.4, 0.8, 1.2}) {
        const auto r = conformal_check(c.warp, factor, n, t, o.h);
        const auto r2 = conformal_check(c.warp, factor, n, t, 0.5 * o.h);
        const double res = std::max(r.mean_curvature_residual(), r.ricci_residual());
        const double res2 = std::max(r2.mean_curvature_residual(), r2.ricci_residual());
        // At least first order: halving h at least halves the error,
        // unless both are already at round-off level.
        const bool order = res2 <= 0.5 * res * 1.05 || res <= 1e-11;
        const bool pass = res <= o.tolerance && order;
        ok = ok && pass;
        csv << c.name << "," << n << "," << csv_number(t) << "," << csv_number(o.h) << ","
            << csv_number(r.mean_curvature_formula) << "," << csv_number(r.mean_curvature_fd) << ","
            << csv_number(r.mean_curvature_residual()) << "," << csv_number(r.ricci_formula) << ","
            << csv_number(r.ricci_fd) << "," << csv_number(r.ricci_residual()) << "," << csv_number(res2) << ","
            << (order ? 1 : 0) << "\n";
        std::printf("%-8s n=%d t=%-4g residual %-10.3g (h/2: %-10.3g)%s\n", c.name, n, t, res, res2,
                    pass ? "" : "  FAILED");
      }
    }
  }
  write_text_file(join(o.out_dir, o.prefix + ".csv"), csv.str());
  return ok ? 0 : 1;
}

}  // namespace stretchlab::cli
