#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "stretchlab/errors.hpp"
#include "stretchlab/fixtures.hpp"
#include "stretchlab/measure.hpp"
#include "stretchlab/mesh_io.hpp"
#include "support.hpp"

using namespace stretchlab;

namespace {

double cross_area(const Point3& a, const Point3& b, const Point3& c) {
  const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const double x = u[1] * v[2] - u[2] * v[1], y = u[2] * v[0] - u[0] * v[2], z = u[0] * v[1] - u[1] * v[0];
  return 0.5 * std::sqrt(x * x + y * y + z * z);
}

}  // namespace

TEST(Surface, HeronMatchesCrossProduct) {
  const auto s = test_support::small_dumbbell();
  const auto& pts = *s.positions();
  for (FaceId f = 0; f < s.face_count(); ++f) {
    const auto& t = s.face(f);
    EXPECT_NEAR(s.face_area(f), cross_area(pts[t[0]], pts[t[1]], pts[t[2]]), 1e-14);
  }
}

TEST(Surface, PlatonicAreasAndEuler) {
  const double unit = std::sqrt(3.0) / 4.0;
  EXPECT_NEAR(tetrahedron().total_area(), 4 * unit, 1e-15);
  EXPECT_NEAR(octahedron().total_area(), 8 * unit, 1e-15);
  EXPECT_EQ(tetrahedron().euler_characteristic(), 2);
  EXPECT_EQ(grid_torus(4, 3, 1.0, 1.0).euler_characteristic(), 0);
  EXPECT_EQ(test_support::small_dumbbell().euler_characteristic(), 2);
}

TEST(Surface, DegenerateTriangleRejected) {
  EXPECT_THROW(triangle_area(1.0, 1.0, 2.0), InvalidMetricError);
  EXPECT_THROW(triangle_area(1.0, 1.0, 3.0), InvalidMetricError);
  auto t = tetrahedron();
  std::vector<double> l(t.edge_lengths().begin(), t.edge_lengths().end());
  l[0] = 5.0;
  EXPECT_THROW(t.with_edge_lengths(l), InvalidMetricError);
}

TEST(Surface, CornerAnglesSumToPi) {
  const auto s = test_support::small_dumbbell();
  for (FaceId f = 0; f < s.face_count(); ++f) {
    EXPECT_NEAR(s.corner_angle(f, 0) + s.corner_angle(f, 1) + s.corner_angle(f, 2), std::numbers::pi, 1e-13);
  }
}

TEST(Measure, OctahedronHemisphere) {
  const auto s = octahedron();
  // Faces around the pole 0 form a hemisphere bounded by the equator.
  std::vector<FaceId> upper(s.vertex_faces(0).begin(), s.vertex_faces(0).end());
  const Region r(upper);
  EXPECT_DOUBLE_EQ(perimeter(s, r), 4.0);
  EXPECT_NEAR(volume(s, r), 4 * std::sqrt(3.0) / 4.0, 1e-15);
  const auto comps = boundary_components(s, r);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_DOUBLE_EQ(comps[0].length, 4.0);
  const auto sep = separates(s, cut_edges(s, r));
  EXPECT_TRUE(sep.separates);
  EXPECT_EQ(complement(s, complement(s, r)), r);
}

TEST(Measure, TorusDistancesBetweenFlatBounds) {
  // Unit grid: a path is never shorter than the flat distance on the torus
  // and never longer than the axis-only route.
  const auto s = grid_torus(6, 6, 1.0, 1.0);
  const std::vector<VertexId> src{0};
  const auto d = vertex_distances(s, src);
  for (VertexId v = 0; v < s.vertex_count(); ++v) {
    const int a = std::min(v / 6, 6 - v / 6), b = std::min(v % 6, 6 - v % 6);
    EXPECT_GE(d[v], std::hypot(a, b) - 1e-12);
    EXPECT_LE(d[v], a + b + 1e-12);
  }
}

TEST(Fixtures, DumbbellSigmaLengthIsExact) {
  DumbbellOptions o;
  o.ring_vertices = 6;
  o.neck_fibre_size = 2.5;
  const auto d = build_dumbbell(o);
  EXPECT_DOUBLE_EQ(cycle_length(d.surface, d.sigma), 2.5);
  EXPECT_EQ(cut_edges(d.surface, d.omega), d.sigma);
  EXPECT_EQ(d.surface.euler_characteristic(), 2);
  EXPECT_EQ(d.collar.band_count(), 2 * o.bands_per_side);
}

TEST(MeshIo, JsonRoundTripIsBitExact) {
  const auto d = build_dumbbell(DumbbellOptions{});
  const auto text = mesh_to_json(d.surface, {{"R", 2.0}, {"note", std::string("x")}});
  const auto back = parse_mesh_json(text);
  ASSERT_EQ(back.surface.edge_count(), d.surface.edge_count());
  for (EdgeId e = 0; e < d.surface.edge_count(); ++e) {
    const auto& k = d.surface.edge(e);
    EXPECT_EQ(back.surface.edge_length(back.surface.edge_id(k.v0, k.v1)), d.surface.edge_length(e));
  }
  EXPECT_EQ(std::get<double>(back.provenance.at("R")), 2.0);
  const Collar c = parse_collar_json(d.surface, collar_to_json(d.collar));
  EXPECT_EQ(c.sigma(), d.collar.sigma());
}

TEST(MeshIo, OffParsing) {
  const std::string off =
      "OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";
  const auto s = parse_off(off);
  EXPECT_EQ(s.face_count(), 4);
  EXPECT_NEAR(s.total_area(), 1.5 + std::sqrt(3.0) / 2.0, 1e-14);
  EXPECT_THROW(parse_off("OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n4 0 1 2 3\n"), InputError);
}
