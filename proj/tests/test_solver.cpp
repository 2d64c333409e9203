#include <gtest/gtest.h>

#include <random>

#include "stretchlab/branch_and_bound.hpp"
#include "stretchlab/errors.hpp"
#include "stretchlab/fixtures.hpp"
#include "stretchlab/maxflow.hpp"
#include "stretchlab/measure.hpp"
#include "stretchlab/solver.hpp"
#include "support.hpp"

using namespace stretchlab;

TEST(MaxFlow, MatchesEnumeratedMinCut) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> cap(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 8;
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    MaxFlow g(n);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u != v && rng() % 3 == 0) {
          c[u][v] = cap(rng);
          g.add_edge(u, v, c[u][v]);
        }
      }
    }
    double best = INFINITY;
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (!(mask & 1) || (mask >> (n - 1)) & 1) continue;
      double cut = 0.0;
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          if ((mask >> u) & 1 && !((mask >> v) & 1)) cut += c[u][v];
        }
      }
      best = std::min(best, cut);
    }
    EXPECT_NEAR(g.solve(0, n - 1), best, 1e-12);
    const auto side = g.source_side();
    EXPECT_TRUE(side[0]);
    EXPECT_FALSE(side[n - 1]);
  }
}

TEST(Solver, LagrangianCutIsGlobalMinimum) {
  const auto s = test_support::small_dumbbell();
  const auto profile = test_support::exhaustive_profile(s);
  for (double lambda : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    const auto p = lagrangian_cut(s, lambda);
    double oracle = INFINITY;
    for (const auto& q : profile) oracle = std::min(oracle, q.perimeter - lambda * q.volume);
    EXPECT_NEAR(p.perimeter - lambda * p.volume, oracle, 1e-12) << lambda;
  }
}

TEST(Solver, BruteForceMatchesOracle) {
  const auto s = octahedron();
  const auto profile = test_support::exhaustive_profile(s);
  const double tol = 1e-9 * s.total_area();
  for (const auto& sample : profile) {
    const auto p = brute_force_min(s, sample.volume, tol);
    EXPECT_EQ(p.perimeter, test_support::oracle_min(profile, sample.volume, tol));
    EXPECT_EQ(p.method, Method::Brute);
    EXPECT_EQ(perimeter(s, p.region), p.perimeter);
  }
  EXPECT_THROW(brute_force_min(build_dumbbell(DumbbellOptions{}).surface, 1.0), SizeError);
}

TEST(Solver, ExactModeMatchesOracleOnTorus) {
  const auto s = grid_torus(4, 3, 1.0, 1.3);
  const auto profile = test_support::exhaustive_profile(s);
  const double tol = 1e-9 * s.total_area();
  SolverSettings settings;
  settings.volume_tolerance = tol;
  settings.cross_validate = false;
  settings.exact = true;
  for (std::size_t i = 1; i < profile.size(); i += 7) {
    const auto p = constrained_min_at_volume(s, profile[i].volume, settings);
    EXPECT_TRUE(p.certified_optimal);
    EXPECT_NEAR(p.perimeter, test_support::oracle_min(profile, profile[i].volume, tol), 1e-12);
  }
}

TEST(Solver, BranchAndBoundReportsCompletion) {
  const auto s = test_support::small_dumbbell();
  const auto profile = test_support::exhaustive_profile(s);
  const double tol = 1e-9 * s.total_area();
  const auto hull = test_support::half_hull(profile, s.total_area());
  const double target = hull[hull.size() / 2].volume;
  const auto r = branch_and_bound(s, target, tol, 10000000);
  EXPECT_TRUE(r.complete);
  ASSERT_TRUE(r.best);
  EXPECT_NEAR(r.best->perimeter, test_support::oracle_min(profile, target, tol), 1e-12);
}

TEST(Solver, HeuristicNeverBeatsOracle) {
  const auto s = test_support::small_dumbbell();
  const auto profile = test_support::exhaustive_profile(s);
  const double tol = 1e-9 * s.total_area();
  SolverSettings settings;
  settings.volume_tolerance = tol;
  settings.cross_validate = false;
  for (std::size_t i = 0; i < profile.size(); i += profile.size() / 40) {
    const auto p = constrained_min_at_volume(s, profile[i].volume, settings);
    EXPECT_GE(p.perimeter, test_support::oracle_min(profile, profile[i].volume, tol) - 1e-12);
    EXPECT_LE(std::abs(p.volume - profile[i].volume), tol);
  }
}

TEST(Solver, HeuristicFindsHalfHullOnDumbbell) {
  const auto s = test_support::small_dumbbell();
  const auto hull = test_support::half_hull(test_support::exhaustive_profile(s), s.total_area());
  ASSERT_GT(hull.size(), 3u);
  SolverSettings settings;
  settings.volume_tolerance = 1e-9 * s.total_area();
  settings.cross_validate = false;
  for (const auto& h : hull) {
    const auto p = constrained_min_at_volume(s, h.volume, settings);
    EXPECT_NEAR(p.perimeter, h.perimeter, 1e-12) << h.volume;
  }
}

TEST(Solver, InfeasibleTargets) {
  const auto s = tetrahedron();
  EXPECT_THROW(constrained_min_at_volume(s, -1.0), InfeasibleError);
  EXPECT_THROW(constrained_min_at_volume(s, 10.0), InfeasibleError);
  EXPECT_TRUE(constrained_min_at_volume(s, 0.0).region.empty());
  EXPECT_EQ(constrained_min_at_volume(s, s.total_area()).region.size(), 4u);
}

TEST(Solver, RepairReachesWindow) {
  const auto s = grid_torus(5, 4, 1.0, 1.0);
  const auto r = repair_region(s, Region{}, 5.0, 1e-9, 1000);
  ASSERT_TRUE(r);
  EXPECT_NEAR(r->volume, 5.0, 1e-9);
  EXPECT_EQ(perimeter(s, r->region), r->perimeter);
}

TEST(Solver, ProfileIsSymmetricAndSorted) {
  const auto s = octahedron();
  const auto prof = isoperimetric_profile(s, 5);
  ASSERT_FALSE(prof.empty());
  for (std::size_t i = 1; i < prof.size(); ++i) EXPECT_LE(prof[i - 1].volume, prof[i].volume);
  for (const auto& p : prof) EXPECT_EQ(perimeter(s, complement(s, p.region)), p.perimeter);
}

TEST(Solver, CanonicalOrder) {
  EXPECT_TRUE(canonical_less(Region({5}), Region({0, 1})));
  EXPECT_TRUE(canonical_less(Region({0, 2}), Region({1, 2})));
  EXPECT_FALSE(canonical_less(Region({1}), Region({1})));
}
