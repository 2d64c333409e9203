#include <benchmark/benchmark.h>

#include "stretchlab/branch_and_bound.hpp"
#include "stretchlab/fixtures.hpp"
#include "stretchlab/measure.hpp"
#include "stretchlab/solver.hpp"
#include "stretchlab/surgery.hpp"

using namespace stretchlab;

namespace {

Dumbbell dumbbell(int m, int bands) {
  DumbbellOptions o;
  o.ring_vertices = m;
  o.neck_fibre_size = 4.0;
  o.bands_per_side = bands;
  o.band_length = 0.05;
  o.cap_height = 0.1;
  o.cap_rings = 2;
  return build_dumbbell(o);
}

}  // namespace

static void BM_LagrangianCut(benchmark::State& state) {
  const auto d = dumbbell(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(lagrangian_cut(d.surface, 0.5));
  state.counters["faces"] = d.surface.face_count();
}
BENCHMARK(BM_LagrangianCut)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

static void BM_BruteForce(benchmark::State& state) {
  const auto s = grid_torus(4, static_cast<int>(state.range(0)), 1.0, 1.3);
  const double target = s.total_area() / 3;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_min(s, target));
  state.counters["faces"] = s.face_count();
}
BENCHMARK(BM_BruteForce)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_BranchAndBoundAtOmega(benchmark::State& state) {
  const auto d = dumbbell(4, 4);
  const double target = volume(d.surface, d.omega);
  const double tol = 1e-9 * d.surface.total_area();
  for (auto _ : state) benchmark::DoNotOptimize(branch_and_bound(d.surface, target, tol, 2000000));
  state.counters["faces"] = d.surface.face_count();
}
BENCHMARK(BM_BranchAndBoundAtOmega)->Unit(benchmark::kMillisecond);

static void BM_SurgeryFamily(benchmark::State& state) {
  const auto d = dumbbell(static_cast<int>(state.range(0)), 6);
  const std::vector<double> Rs{0.1, 2, 4, 8, 16};
  for (auto _ : state) benchmark::DoNotOptimize(surgery_family(d.surface, d.collar, 0.15, Rs));
  state.counters["faces"] = d.surface.face_count();
}
BENCHMARK(BM_SurgeryFamily)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_ConstrainedMin(benchmark::State& state) {
  const auto d = dumbbell(8, 6);
  const double target = volume(d.surface, d.omega);
  SolverSettings settings;
  settings.cross_validate = false;
  for (auto _ : state) benchmark::DoNotOptimize(constrained_min_at_volume(d.surface, target, settings));
  state.counters["faces"] = d.surface.face_count();
}
BENCHMARK(BM_ConstrainedMin)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
