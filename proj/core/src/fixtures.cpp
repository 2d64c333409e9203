#include "stretchlab/fixtures.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "stretchlab/errors.hpp"
#include "stretchlab/measure.hpp"

namespace stretchlab {

namespace {

TriangulatedSurface unit_lengths(int vertex_count, std::vector<Triangle> faces) {
  std::map<EdgeKey, double> lengths;
  for (const auto& t : faces) {
    for (int k = 0; k < 3; ++k) lengths[make_edge_key(t[k], t[(k + 1) % 3])] = 1.0;
  }
  return TriangulatedSurface::from_lengths(vertex_count, std::move(faces), lengths);
}

std::vector<Triangle> grid_torus_faces(int nu, int nv) {
  auto id = [&](int i, int j) { return ((i + nu) % nu) * nv + (j + nv) % nv; };
  std::vector<Triangle> faces;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return faces;
}

}  // namespace

TriangulatedSurface tetrahedron() {
  return unit_lengths(4, {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {0, 2, 3}});
}

TriangulatedSurface octahedron() {
  return unit_lengths(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                          {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
}

TriangulatedSurface grid_torus(int nu, int nv, double du, double dv) {
  if (nu < 3 || nv < 3) throw InputError("grid torus needs at least 3 x 3 vertices");
  auto faces = grid_torus_faces(nu, nv);
  std::map<EdgeKey, double> lengths;
  const double diag = std::hypot(du, dv);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const int v = i * nv + j;
      lengths[make_edge_key(v, ((i + 1) % nu) * nv + j)] = du;
      lengths[make_edge_key(v, i * nv + (j + 1) % nv)] = dv;
      lengths[make_edge_key(v, ((i + 1) % nu) * nv + (j + 1) % nv)] = diag;
    }
  }
  return TriangulatedSurface::from_lengths(nu * nv, std::move(faces), lengths);
}

TriangulatedSurface product_torus(int n, double r1, double r2) {
  if (n < 3) throw InputError("product torus needs n >= 3");
  std::vector<std::array<double, 4>> x(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = 2.0 * std::numbers::pi * i / n;
      const double b = 2.0 * std::numbers::pi * j / n;
      x[i * n + j] = {r1 * std::cos(a), r1 * std::sin(a), r2 * std::cos(b), r2 * std::sin(b)};
    }
  }
  auto faces = grid_torus_faces(n, n);
  std::map<EdgeKey, double> lengths;
  for (const auto& t : faces) {
    for (int k = 0; k < 3; ++k) {
      const auto key = make_edge_key(t[k], t[(k + 1) % 3]);
      double d2 = 0.0;
      for (int c = 0; c < 4; ++c) {
        const double d = x[key.v0][c] - x[key.v1][c];
        d2 += d * d;
      }
      lengths[key] = std::sqrt(d2);
    }
  }
  return TriangulatedSurface::from_lengths(n * n, std::move(faces), lengths);
}

std::vector<VertexId> revolution_ring_vertices(int ring, int ring_vertices) {
  std::vector<VertexId> out(ring_vertices);
  for (int i = 0; i < ring_vertices; ++i) out[i] = 1 + ring * ring_vertices + i;
  return out;
}

TriangulatedSurface surface_of_revolution(const std::vector<RevolutionRing>& rings,
                                          int ring_vertices, double bottom_pole,
                                          double top_pole) {
  const int m = ring_vertices;
  if (m < 3) throw InputError("rings need at least three vertices");
  if (rings.empty()) throw InputError("surface of revolution needs at least one ring");
  const int nr = static_cast<int>(rings.size());
  const int nv = 2 + nr * m;
  const int top = nv - 1;
  const double half_angle = std::numbers::pi / m;
  const double angle = 2.0 * half_angle;

  std::vector<double> radius(nr);
  for (int j = 0; j < nr; ++j) {
    if (!(rings[j].chord > 0.0)) throw InputError("ring chord must be positive");
    radius[j] = rings[j].chord / (2.0 * std::sin(half_angle));
  }

  std::vector<Point3> pos(nv);
  pos[0] = {0.0, 0.0, bottom_pole};
  pos[top] = {0.0, 0.0, top_pole};
  for (int j = 0; j < nr; ++j) {
    for (int i = 0; i < m; ++i) {
      pos[1 + j * m + i] = {radius[j] * std::cos(angle * i), radius[j] * std::sin(angle * i),
                            rings[j].height};
    }
  }

  std::vector<Triangle> faces;
  std::map<EdgeKey, double> lengths;
  auto ring_id = [&](int j, int i) { return 1 + j * m + (i % m); };

  for (int i = 0; i < m; ++i) {
    faces.push_back({0, ring_id(0, i + 1), ring_id(0, i)});
    lengths[make_edge_key(0, ring_id(0, i))] =
        std::hypot(radius[0], rings[0].height - bottom_pole);
  }
  for (int j = 0; j < nr; ++j) {
    for (int i = 0; i < m; ++i) lengths[make_edge_key(ring_id(j, i), ring_id(j, i + 1))] = rings[j].chord;
  }
  for (int j = 0; j + 1 < nr; ++j) {
    const double dz = rings[j + 1].height - rings[j].height;
    const double dr = radius[j + 1] - radius[j];
    const double longitudinal = std::hypot(dr, dz);
    const double diagonal = std::sqrt(radius[j] * radius[j] + radius[j + 1] * radius[j + 1] -
                                      2.0 * radius[j] * radius[j + 1] * std::cos(angle) + dz * dz);
    for (int i = 0; i < m; ++i) {
      const int a0 = ring_id(j, i);
      const int a1 = ring_id(j, i + 1);
      const int b0 = ring_id(j + 1, i);
      const int b1 = ring_id(j + 1, i + 1);
      faces.push_back({a0, a1, b1});
      faces.push_back({a0, b1, b0});
      lengths[make_edge_key(a0, b0)] = longitudinal;
      lengths[make_edge_key(a0, b1)] = diagonal;
    }
  }
  for (int i = 0; i < m; ++i) {
    faces.push_back({top, ring_id(nr - 1, i), ring_id(nr - 1, i + 1)});
    lengths[make_edge_key(top, ring_id(nr - 1, i))] =
        std::hypot(radius[nr - 1], top_pole - rings[nr - 1].height);
  }
  return TriangulatedSurface::from_lengths(nv, std::move(faces), lengths, std::move(pos));
}

Dumbbell build_dumbbell(const DumbbellOptions& o) {
  const int m = o.ring_vertices;
  if (m < 3) throw InputError("dumbbell rings need at least three vertices");
  if (o.bands_per_side < 1) throw InputError("dumbbell needs at least one band per side");
  if (!(o.neck_fibre_size > 0.0)) throw InputError("neck fibre size must be positive");
  if (o.cap_rings < 0) throw InputError("cap ring count must be non-negative");
  if (o.flare < 0.0) throw InputError("flare must be non-negative");

  const double sigma_chord = o.neck_fibre_size / m;
  const double chord_per_radius = 2.0 * std::sin(std::numbers::pi / m);
  const double band = o.band_length > 0.0 ? o.band_length : sigma_chord;
  const int k = o.bands_per_side;

  std::vector<RevolutionRing> neck;
  for (int j = 0; j <= 2 * k; ++j) {
    const double z = (j - k) * band;
    // Sigma keeps the exact chord so its length is neck_fibre_size.
    const double chord = j == k ? sigma_chord : sigma_chord * (1.0 + o.flare * z * z);
    neck.push_back({chord, z});
  }
  const double end_radius = neck.front().chord / chord_per_radius;
  const double a = o.cap_radius > 0.0 ? o.cap_radius : 3.0 * end_radius;
  const double b = o.cap_height > 0.0 ? o.cap_height : a;
  if (a < end_radius) throw InputError("cap radius smaller than the neck end radius");

  // Bottom cap: spheroid with semi-axes (a, b) whose parallel of radius
  // end_radius coincides with the lowest neck ring.
  const double z0 = neck.front().height;
  const double ratio = end_radius / a;
  const double centre = z0 - b * std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  const double phi0 = std::numbers::pi - std::asin(std::min(1.0, ratio));
  std::vector<RevolutionRing> bottom;
  for (int i = 1; i <= o.cap_rings; ++i) {
    const double phi = phi0 * i / (o.cap_rings + 1);
    bottom.push_back({a * std::sin(phi) * chord_per_radius, centre - b * std::cos(phi)});
  }
  const double bottom_pole = centre - b;

  std::vector<RevolutionRing> rings = bottom;
  rings.insert(rings.end(), neck.begin(), neck.end());
  for (auto it = bottom.rbegin(); it != bottom.rend(); ++it) rings.push_back({it->chord, -it->height});

  auto surface = surface_of_revolution(rings, m, bottom_pole, -bottom_pole);
  std::vector<std::vector<VertexId>> collar_rings;
  for (int j = 0; j <= 2 * k; ++j) collar_rings.push_back(revolution_ring_vertices(o.cap_rings + j, m));
  auto collar = make_collar(surface, std::move(collar_rings), k);
  auto sigma = collar.sigma();
  auto omega = sigma_side(surface, collar, Side::Minus);
  return {std::move(surface), std::move(collar), std::move(sigma), std::move(omega)};
}

Dumbbell build_dumbbell(double neck_fibre_size, int neck_bands, int cap_resolution) {
  if (neck_bands < 3 || cap_resolution < 3) throw InputError("dumbbell counts must be >= 3");
  DumbbellOptions o;
  o.neck_fibre_size = neck_fibre_size;
  o.bands_per_side = neck_bands;
  o.ring_vertices = cap_resolution;
  o.cap_rings = std::max(1, cap_resolution / 4);
  return build_dumbbell(o);
}

}  // namespace stretchlab
