// Acceptance run: one PASS/FAIL line per criterion. Usage:
//   acceptance <stretchlab binary> <configs dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "stretchlab/cones.hpp"
#include "stretchlab/config.hpp"
#include "stretchlab/conformal.hpp"
#include "stretchlab/experiment.hpp"
#include "stretchlab/fixtures.hpp"
#include "stretchlab/measure.hpp"
#include "stretchlab/solver.hpp"
#include "stretchlab/surgery.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace stretchlab;

namespace {

std::string g_cli;
fs::path g_configs;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ---- 1: surgery invariants on the dumbbell

Outcome surgery_invariants() {
  Outcome o;
  const auto c = load_config((g_configs / "coarse.toml").string());
  const auto g = build_geometry(c);
  const auto family = surgery_family(g.surface, g.collar, c.epsilon, c.R_list);
  const auto report = verify_surgery(g.surface, family, g.sigma, g.omega, family.front().cylinder);
  const double per0 = perimeter(g.surface, g.omega);
  std::vector<double> outside, cyl;
  for (const auto& m : family) {
    o.require(perimeter(m.surface, g.omega) == per0, "Per(Omega) changed at R=" + fmt(m.R));
    outside.push_back(volume(m.surface, complement(m.surface, m.cylinder)));
    cyl.push_back(volume(m.surface, m.cylinder));
  }
  for (double v : outside) o.require(v == outside.front(), "Vol(M\\T) not constant");
  // Least-squares line through (R, Vol(T)).
  const double n = static_cast<double>(cyl.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < cyl.size(); ++i) {
    sx += c.R_list[i];
    sy += cyl[i];
    sxx += c.R_list[i] * c.R_list[i];
    sxy += c.R_list[i] * cyl[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / n;
  double resid = 0, vmax = 0;
  for (std::size_t i = 0; i < cyl.size(); ++i) {
    resid = std::max(resid, std::abs(cyl[i] - (slope * c.R_list[i] + icpt)));
    vmax = std::max(vmax, std::abs(cyl[i]));
  }
  resid /= vmax;
  o.require(slope > 0, "Vol(T) slope not positive");
  o.require(resid < 1e-9, "Vol(T) affine residual " + fmt(resid));
  o.require(report.ok(), report.ok() ? "" : "surgery report: " + report.violations.front());
  if (o.pass) o.detail = "slope " + fmt(slope) + ", residual " + fmt(resid);
  return o;
}

// ---- 2: distance realisation

Outcome distance_realisation() {
  Outcome o;
  double worst = 0;
  for (const char* name : {"coarse.toml", "fine.toml"}) {
    const auto c = load_config((g_configs / name).string());
    const CutoffProfile eta(c.epsilon);
    for (double R : c.R_list) {
      const double L = cylinder_length({R, c.ell()}, eta);
      o.require(std::abs(L - R) <= 1e-12 * R, std::string(name) + ": integral " + fmt(L) + " vs R " + fmt(R));
    }
    const auto g = build_geometry(c);
    const auto family = surgery_family(g.surface, g.collar, c.epsilon, c.R_list);
    double band = 0;
    for (int j = 1; j < g.collar.ring_count(); ++j) {
      band = std::max(band, std::abs(g.collar.offset(j) - g.collar.offset(j - 1)));
    }
    for (const auto& m : family) {
      const double d = cylinder_rim_distance(m);
      worst = std::max(worst, std::abs(d - m.R));
      o.require(std::abs(d - m.R) <= band, std::string(name) + ": rim distance " + fmt(d) + " at R " + fmt(m.R));
    }
  }
  if (o.pass) o.detail = "max |rim - R| " + fmt(worst);
  return o;
}

// ---- 3: conformal formulas vs finite differences

Outcome conformal_formulas() {
  Outcome o;
  const std::map<std::string, Jet1D> warps{
      {"sphere", {[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
                  [](double t) { return -std::sin(t); }}},
      {"cylinder", {[](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }}},
      {"neck", {[](double t) { return std::cosh(t); }, [](double t) { return std::sinh(t); },
                [](double t) { return std::cosh(t); }}}};
  const Jet1D factor{[](double t) { return 0.1 * std::sin(t) + 0.05 * t * t; },
                     [](double t) { return 0.1 * std::cos(t) + 0.1 * t; },
                     [](double t) { return -0.1 * std::sin(t) + 0.1; }};
  const double h = 1e-3;
  double worst = 0;
  for (const auto& [name, w] : warps) {
    for (int n = 1; n <= 3; ++n) {
      for (double t : {0.4, 0.8, 1.2}) {
        const auto r1 = conformal_check(w, factor, n, t, h);
        const auto r2 = conformal_check(w, factor, n, t, h / 2);
        const double a1 = std::max(r1.mean_curvature_residual(), r1.ricci_residual());
        const double a2 = std::max(r2.mean_curvature_residual(), r2.ricci_residual());
        worst = std::max(worst, a1);
        o.require(a1 <= 1e-6, name + " n=" + std::to_string(n) + " residual " + fmt(a1));
        // Halving h must at least halve the error, unless it is at rounding level.
        o.require(a2 <= 0.5 * a1 * 1.05 || a1 <= 1e-11, name + " order check " + fmt(a1) + " -> " + fmt(a2));
      }
    }
  }
  if (o.pass) o.detail = "max residual " + fmt(worst);
  return o;
}

// ---- 4: cone table

Outcome cone_table() {
  Outcome o;
  int rows = 0;
  for (int p = 1; p <= 11; ++p) {
    for (int q = p; p + q <= 12; ++q) {
      MinimalCone cone;
      cone.ambient_dim = p + q + 2;
      cone.link = ProductOfSpheres{p, q};
      const auto v = classify_stability(cone, product_link_spectrum(p, q, 8));
      const int s = p + q;
      const bool expect_stable = 4 * s < (s - 1) * (s - 1);
      const bool got_stable = v.cls == StabilityClass::StrictlyStable;
      o.require(expect_stable == got_stable, "S^" + std::to_string(p) + "xS^" + std::to_string(q) + " misclassified");
      if (p == 3 && q == 3) {
        o.require(v.mu1 == -6.0 && v.threshold == -6.25 && got_stable, "p=q=3 not strictly stable at -6 vs -6.25");
      }
      if (p == q && p <= 2) o.require(v.cls == StabilityClass::Unstable, "p=q<=2 not unstable");
      ++rows;
    }
  }
  const auto mesh = product_torus(24, std::sqrt(0.5), std::sqrt(0.5));
  const auto spec = meshed_link_spectrum({mesh, std::vector<double>(mesh.vertex_count(), 2.0)}, 2);
  const double mu1 = spec.eigenvalues.front();
  o.require(std::abs(mu1 + 2.0) <= 1e-2, "meshed Clifford mu1 " + fmt(mu1));
  if (o.pass) o.detail = std::to_string(rows) + " cones, meshed Clifford mu1 " + fmt(mu1);
  return o;
}

// ---- 5: solver vs brute force
//
// The oracle is an independent enumeration of every face subset. The
// closed-surface profile is 0 at both ends, so the exposed volumes are the
// vertices of the lower hull over [0, total / 2] and their complements.
// Default settings (brute-force cross-check under the size cap) must match
// the oracle there; the cut heuristics alone must never go below it.

Outcome solver_oracle() {
  Outcome o;
  const std::vector<std::pair<std::string, TriangulatedSurface>> meshes{
      {"tetrahedron", tetrahedron()},
      {"octahedron", octahedron()},
      {"dumbbell20", test_support::small_dumbbell()},
      {"torus24", grid_torus(4, 3, 1.0, 1.3)}};
  int checked = 0, heuristic_hits = 0, exposed = 0;
  for (const auto& [name, s] : meshes) {
    const double A = s.total_area();
    const double tol = 1e-9 * A;
    SolverSettings defaults;
    defaults.volume_tolerance = tol;
    SolverSettings heuristic = defaults;
    heuristic.cross_validate = false;
    const auto profile = test_support::exhaustive_profile(s);
    for (const auto& h : test_support::half_hull(profile, A)) {
      for (double v : {h.volume, A - h.volume}) {
        const auto p = constrained_min_at_volume(s, v, defaults);
        o.require(std::abs(p.perimeter - h.perimeter) <= 1e-12 * (1 + h.perimeter),
                  name + ": exposed volume " + fmt(v) + " got " + fmt(p.perimeter) + " vs " + fmt(h.perimeter));
        const auto q = constrained_min_at_volume(s, v, heuristic);
        o.require(q.perimeter >= h.perimeter - 1e-12 * (1 + h.perimeter), name + ": heuristic below oracle at " + fmt(v));
        heuristic_hits += std::abs(q.perimeter - h.perimeter) <= 1e-12 * (1 + h.perimeter);
        ++exposed;
        ++checked;
      }
    }
    const std::size_t stride = std::max<std::size_t>(1, profile.size() / 40);
    for (std::size_t i = 0; i < profile.size(); i += stride) {
      const double target = profile[i].volume;
      const double oracle = test_support::oracle_min(profile, target, tol);
      for (const auto* settings : {&defaults, &heuristic}) {
        const auto p = constrained_min_at_volume(s, target, *settings);
        o.require(p.perimeter >= oracle - 1e-12 * (1 + oracle), name + ": below brute force at " + fmt(target));
        o.require(std::abs(p.volume - target) <= tol, name + ": volume off target at " + fmt(target));
      }
      ++checked;
    }
  }
  if (o.pass) {
    o.detail = std::to_string(checked) + " volumes; cut heuristics alone hit " + std::to_string(heuristic_hits) +
               "/" + std::to_string(exposed) + " exposed volumes";
  }
  return o;
}

// ---- 6: headline transition

bool transition_holds(const ExperimentRecord& rec, bool need_certified, Outcome& o, const std::string& name) {
  const bool before = o.pass;
  o.require(rec.ok(), name + ": " + (rec.ok() ? "" : rec.violations.front()));
  o.require(rec.R_star.has_value(), name + ": no R*");
  if (!rec.R_star || rec.rows.empty()) return false;
  o.require(rec.rows.front().solved && !rec.rows.front().boundary_is_target, name + ": boundary == Sigma at R = ell");
  for (const auto& row : rec.rows) {
    if (row.R < *rec.R_star) continue;
    o.require(row.boundary_is_target, name + ": boundary != Sigma at R " + fmt(row.R));
    if (need_certified) o.require(row.result.certified_optimal, name + ": uncertified at R " + fmt(row.R));
  }
  return o.pass && before;
}

Outcome headline_transition() {
  Outcome o;
  const auto coarse = run_experiment(load_config((g_configs / "coarse.toml").string()));
  transition_holds(coarse, true, o, "coarse");
  const auto fine = run_experiment(load_config((g_configs / "fine.toml").string()));
  transition_holds(fine, false, o, "fine");
  if (o.pass) {
    o.detail = "coarse " + std::to_string(coarse.face_count) + " faces R* " + fmt(*coarse.R_star) + "; fine " +
               std::to_string(fine.face_count) + " faces R* " + fmt(*fine.R_star);
  }
  return o;
}

// ---- 7: competitor ring

Outcome competitor_ring() {
  Outcome o;
  const auto rec = run_experiment(load_config((g_configs / "coarse_vcm.toml").string()));
  o.require(rec.ok(), rec.ok() ? "" : rec.violations.front());
  o.require(!rec.rows.empty(), "no rows");
  if (!rec.rows.empty()) {
    const auto& last = rec.rows.back();
    o.require(!last.skipped, "largest R skipped: " + last.skip_reason);
    o.require(last.solved && last.boundary_is_target, "boundary != competitor at R " + fmt(last.R));
  }
  if (o.pass) o.detail = "R " + fmt(rec.rows.back().R) + " minimiser bounded by ring " + std::to_string(*rec.competitor_ring);
  return o;
}

// ---- 8: determinism

std::map<std::string, std::string> slurp_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[fs::relative(e.path(), dir).string()] = ss.str();
  }
  return out;
}

int run_cli(const std::string& args, int threads) {
  const std::string cmd = "STRETCHLAB_THREADS=" + std::to_string(threads) + " \"" + g_cli + "\" " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / ("stretchlab_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const std::string coarse = "\"" + (g_configs / "coarse.toml").string() + "\"";
  const std::string vcm = "\"" + (g_configs / "coarse_vcm.toml").string() + "\"";
  std::vector<std::map<std::string, std::string>> runs;
  int files = 0;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / ("run" + std::to_string(run));
    const int threads = run == 0 ? 1 : 4;
    auto q = [&](const char* sub) { return "\"" + (dir / sub).string() + "\""; };
    const std::vector<std::string> commands{
        "surgery " + coarse + " -o " + q("surgery"),
        "sweep " + coarse + " -o " + q("sweep"),
        "vcm " + vcm + " -o " + q("vcm"),
        "solve " + q("surgery/coarse_g.json") + " --fraction 0.3 --exact -o " + q("solve"),
        "cones -o " + q("cones"),
        "conformal-check -o " + q("conformal")};
    for (const auto& c : commands) {
      const int rc = run_cli(c, threads);
      o.require(rc == 0, "exit " + std::to_string(rc) + " from: " + c.substr(0, c.find(' ')));
    }
    runs.push_back(slurp_dir(dir));
  }
  o.require(!runs[0].empty(), "no output files");
  o.require(runs[0].size() == runs[1].size(), "file sets differ");
  for (const auto& [name, bytes] : runs[0]) {
    const auto it = runs[1].find(name);
    o.require(it != runs[1].end() && it->second == bytes, "differs: " + name);
    ++files;
  }
  fs::remove_all(root);
  if (o.pass) o.detail = std::to_string(files) + " files identical across 1 and 4 threads";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <stretchlab binary> <configs dir>\n", argv[0]);
    return 2;
  }
  g_cli = argv[1];
  g_configs = argv[2];

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "surgery invariants", 1.0, surgery_invariants},
      {2, "distance realisation", 1.0, distance_realisation},
      {3, "conformal formulas", 5.0, conformal_formulas},
      {4, "cone stability table", 10.0, cone_table},
      {5, "solver oracle equivalence", 60.0, solver_oracle},
      {6, "headline transition", 300.0, headline_transition},
      {7, "competitor ring", 60.0, competitor_ring},
      {8, "determinism", 0.0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) o.require(false, "runtime " + fmt(secs) + " s over " + fmt(c.budget_s) + " s");
    std::printf("criterion %d %-26s %s  %.2fs  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
