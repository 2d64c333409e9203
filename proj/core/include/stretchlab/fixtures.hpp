#pragma once

#include <vector>

#include "stretchlab/collar.hpp"
#include "stretchlab/surface.hpp"

namespace stretchlab {

/// Regular tetrahedron boundary with unit edges.
TriangulatedSurface tetrahedron();

/// Regular octahedron boundary with unit edges. Vertex 0 and 5 are the
/// poles; 1..4 is the equator.
TriangulatedSurface octahedron();

/// Flat torus from an nu x nv grid; edges along the two grid directions have
/// lengths du and dv, diagonals sqrt(du^2 + dv^2). Needs nu, nv >= 3.
TriangulatedSurface grid_torus(int nu, int nv, double du, double dv);

/// Torus S^1(r1) x S^1(r2) in R^4 sampled on an n x n grid, with chordal
/// edge lengths. r1 = r2 = 1/sqrt(2) is the Clifford torus in S^3.
TriangulatedSurface product_torus(int n, double r1, double r2);

/// One parallel of a surface of revolution: `chord` is the length of each
/// of its fibre edges, `height` its position on the axis.
struct RevolutionRing {
  double chord;
  double height;
};

/// Closed surface of revolution with `ring_vertices` vertices per parallel
/// and a pole at each end. Vertex 0 is the bottom pole, ring j occupies
/// vertices 1 + j*m .. j*m + m, the top pole is last. Edge lengths are
/// exact functions of the profile, so every quad of a band is congruent.
TriangulatedSurface surface_of_revolution(const std::vector<RevolutionRing>& rings,
                                          int ring_vertices, double bottom_pole,
                                          double top_pole);

std::vector<VertexId> revolution_ring_vertices(int ring, int ring_vertices);

struct DumbbellOptions {
  int ring_vertices = 8;
  double neck_fibre_size = 1.0;  // total length of Sigma
  int bands_per_side = 6;        // collar bands between Sigma and each of Gamma^-/Gamma^+
  double band_length = 0.0;      // axial band height; 0 means neck_fibre_size / ring_vertices
  double flare = 0.0;            // neck radius r(z) = r_sigma (1 + flare z^2)
  double cap_radius = 0.0;       // 0 means 3x the neck end radius
  double cap_height = 0.0;       // 0 means cap_radius
  int cap_rings = 2;             // parallels per cap between the neck and the pole
};

struct Dumbbell {
  TriangulatedSurface surface;
  Collar collar;
  Cycle sigma;
  Region omega;  // the Gamma^- side of Sigma
};

Dumbbell build_dumbbell(const DumbbellOptions& options);

/// Two caps joined by a product neck; `cap_resolution` vertices per ring
/// and `neck_bands` collar bands on each side of Sigma.
Dumbbell build_dumbbell(double neck_fibre_size, int neck_bands, int cap_resolution);

}  // namespace stretchlab
