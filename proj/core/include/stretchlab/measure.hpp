#pragma once

#include <span>
#include <vector>

#include "stretchlab/surface.hpp"

namespace stretchlab {

/// Sum of the lengths of edges with exactly one incident face in `region`.
double perimeter(const TriangulatedSurface& surface, const Region& region);

/// Sum of face areas, accumulated in increasing face order.
double volume(const TriangulatedSurface& surface, const Region& region);

Region complement(const TriangulatedSurface& surface, const Region& region);
Region full_region(const TriangulatedSurface& surface);

/// Edges with exactly one incident face in `region`.
Cycle cut_edges(const TriangulatedSurface& surface, const Region& region);

double cycle_length(const TriangulatedSurface& surface, const Cycle& cycle);

/// Throws InputError when a face index is outside the surface.
void check_region(const TriangulatedSurface& surface, const Region& region);
void check_cycle(const TriangulatedSurface& surface, const Cycle& cycle);

struct BoundaryComponent {
  Cycle cycle;
  double length = 0.0;
  /// Largest edge-weighted graph distance (in the whole surface) between two
  /// vertices of the component.
  double diameter = 0.0;
};

/// Connected components of the region boundary, ordered by smallest edge id.
std::vector<BoundaryComponent> boundary_components(const TriangulatedSurface& surface,
                                                   const Region& region);

struct Separation {
  bool separates = false;
  Region side_a;  // contains the smallest face index
  Region side_b;
};

/// Whether deleting the cycle's edges from the dual graph leaves exactly two
/// face components.
Separation separates(const TriangulatedSurface& surface, const Cycle& cycle);

/// Single- or multi-source Dijkstra over edges.
std::vector<double> vertex_distances(const TriangulatedSurface& surface,
                                     std::span<const VertexId> sources);

/// Shortest edge path between two vertex sets.
double set_distance(const TriangulatedSurface& surface, std::span<const VertexId> from,
                    std::span<const VertexId> to);

std::vector<VertexId> cycle_vertices(const TriangulatedSurface& surface, const Cycle& cycle);

}  // namespace stretchlab
