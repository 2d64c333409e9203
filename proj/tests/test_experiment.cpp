#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include <unistd.h>

#include "stretchlab/config.hpp"
#include "stretchlab/errors.hpp"
#include "stretchlab/experiment.hpp"
#include "stretchlab/fixtures.hpp"
#include "stretchlab/measure.hpp"
#include "stretchlab/mesh_io.hpp"
#include "stretchlab/report.hpp"

using namespace stretchlab;

namespace {

const char* kCoarse = R"(
[geometry]
kind = "dumbbell"
ring_vertices = 4
neck_fibre_size = 4.0
bands_per_side = 4
band_length = 0.05
cap_height = 0.1
cap_rings = 0

[surgery]
epsilon = 0.15
R = ["ell", 2, 4, 8, 16]

[solver]
relative_volume_tolerance = 1e-9
cross_validate = false
exact = true
)";

}  // namespace

TEST(Config, ParsesEllAndDefaults) {
  const auto c = parse_config(kCoarse);
  ASSERT_EQ(c.R_list.size(), 5u);
  EXPECT_EQ(c.R_list[0], c.ell());
  EXPECT_EQ(c.ell(), 0.15 / 3.0);
  EXPECT_EQ(c.geometry.dumbbell.ring_vertices, 4);
  EXPECT_TRUE(c.solver.exact);
  EXPECT_EQ(c.output.prefix, "stretchlab");
  EXPECT_EQ(c.mode, TargetMode::SigmaVolume);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_config(std::string(kCoarse) + "\n[output]\nfoo = 1\n"), InputError);
  EXPECT_THROW(parse_config("[surgery]\nepsilon = -1.0\nR = [1]\n"), InputError);
  EXPECT_THROW(parse_config("[surgery]\nepsilon = 0.15\nR = [\"elll\"]\n"), InputError);
  EXPECT_THROW(parse_config("[surgery\n"), InputError);
}

TEST(Report, EmptyRecordGivesHeaderOnly) {
  const ExperimentRecord r;
  const auto csv = record_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
  EXPECT_EQ(csv_number(0.1), "0.10000000000000001");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
}

TEST(Experiment, CoarseDumbbellTransition) {
  const auto c = parse_config(kCoarse);
  const auto rec = run_experiment(c);
  EXPECT_TRUE(rec.ok()) << (rec.violations.empty() ? "" : rec.violations.front());
  ASSERT_EQ(rec.rows.size(), 5u);
  EXPECT_FALSE(rec.rows[0].boundary_is_target);
  EXPECT_LT(rec.rows[0].result.perimeter, rec.rows[0].per_sigma);
  for (std::size_t i = 1; i < rec.rows.size(); ++i) {
    EXPECT_TRUE(rec.rows[i].boundary_is_target) << rec.rows[i].R;
    EXPECT_TRUE(rec.rows[i].result.certified_optimal);
  }
  ASSERT_TRUE(rec.R_star);
  EXPECT_EQ(*rec.R_star, 2.0);
  for (const auto& row : rec.rows) {
    EXPECT_EQ(row.per_sigma, rec.per_sigma_original);
    EXPECT_EQ(row.vol_outside_cylinder, rec.rows[0].vol_outside_cylinder);
  }
  // Same input, same bytes.
  EXPECT_EQ(record_json(rec, c), record_json(run_experiment(c), c));
}

TEST(Experiment, VcmSkipGate) {
  // Thin neck whose rings widen away from Sigma while every longitudinal
  // edge stays exactly one band long, so the eps marks still fall on rings.
  const int m = 6;
  const double band = 0.5;
  const double half_side = 1.0 / (2.0 * std::sin(std::numbers::pi / m));
  std::vector<RevolutionRing> rings;
  double height = 0.0, prev_radius = 0.0;
  for (int j = 0; j <= 8; ++j) {
    const int k = std::abs(j - 4);
    const double chord = 0.1 + 0.12 * k;
    const double radius = chord * half_side;
    if (j > 0) height += std::sqrt(band * band - (radius - prev_radius) * (radius - prev_radius));
    rings.push_back({chord, height});
    prev_radius = radius;
  }
  const auto surface = surface_of_revolution(rings, m, -0.5, height + 0.5);
  std::vector<std::vector<VertexId>> collar_rings;
  for (int j = 0; j <= 8; ++j) collar_rings.push_back(revolution_ring_vertices(j, m));
  const Collar collar = make_collar(surface, collar_rings, 4);

  const auto dir = std::filesystem::temp_directory_path() / ("stretchlab_vcm_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  write_text_file((dir / "mesh.json").string(), mesh_to_json(surface));
  write_text_file((dir / "collar.json").string(), collar_to_json(collar));
  auto c = parse_config(
      "[geometry]\nkind = \"mesh\"\nmesh = \"mesh.json\"\ncollar = \"collar.json\"\n"
      "[surgery]\nepsilon = 1.5\nR = [\"ell\", 4.0]\nmode = \"vcm\"\ncompetitor_ring = 1\n"
      "[solver]\nrelative_volume_tolerance = 0.3\n",
      dir.string());
  // The wide volume window admits regions far cheaper than the competitor
  // ring, so the minimiser's shortest boundary component drops below the gap.
  const auto rec = run_experiment(c);
  std::filesystem::remove_all(dir);

  ASSERT_EQ(rec.rows.size(), 2u);
  int skipped = 0;
  for (const auto& row : rec.rows) {
    EXPECT_GT(row.area_gap, row.per_sigma);
    EXPECT_EQ(row.skipped, !(row.bounds.components > 0 && row.area_gap < row.bounds.delta));
    EXPECT_EQ(row.skipped, !row.skip_reason.empty());
    skipped += row.skipped;
  }
  EXPECT_GT(skipped, 0);
}

TEST(Experiment, InnerCollarSpansTheEpsRings) {
  const auto c = parse_config(kCoarse);
  const auto g = build_geometry(c);
  const auto inner = inner_collar(g.surface, g.collar, 0.15);
  // eps is three bands from each end, so one band remains on each side of Sigma.
  EXPECT_EQ(inner.band_count(), 2);
  EXPECT_EQ(inner.sigma(), g.collar.sigma());
  EXPECT_THROW(inner_collar(g.surface, g.collar, 0.13), StructuralError);
}
