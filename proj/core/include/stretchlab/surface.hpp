#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stretchlab {

using VertexId = int;
using EdgeId = int;
using FaceId = int;

using Triangle = std::array<VertexId, 3>;
using Point3 = std::array<double, 3>;

struct EdgeKey {
  VertexId v0;  // v0 < v1
  VertexId v1;

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

EdgeKey make_edge_key(VertexId a, VertexId b);

/// Canonical set of faces. Always sorted and free of duplicates.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<FaceId> faces);

  std::span<const FaceId> faces() const { return faces_; }
  std::size_t size() const { return faces_.size(); }
  bool empty() const { return faces_.empty(); }
  bool contains(FaceId f) const;

  friend bool operator==(const Region&, const Region&) = default;
  friend auto operator<=>(const Region&, const Region&) = default;

 private:
  std::vector<FaceId> faces_;
};

/// Canonical set of edges forming one or more closed loops.
class Cycle {
 public:
  Cycle() = default;
  explicit Cycle(std::vector<EdgeId> edges);

  std::span<const EdgeId> edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool contains(EdgeId e) const;

  friend bool operator==(const Cycle&, const Cycle&) = default;

 private:
  std::vector<EdgeId> edges_;
};

/// Closed, connected triangulated 2-manifold carrying a discrete metric given
/// by one positive length per edge. Immutable after construction.
///
/// Edges are numbered in lexicographic order of their (sorted) endpoint
/// pairs, so two surfaces built from the same face list share edge ids.
class TriangulatedSurface {
 public:
  /// Builds from explicit edge lengths; every edge of `faces` must be
  /// present in `lengths`.
  static TriangulatedSurface from_lengths(int vertex_count, std::vector<Triangle> faces,
                                          const std::map<EdgeKey, double>& lengths,
                                          std::optional<std::vector<Point3>> positions = {});

  /// Builds from an embedding; edge lengths are Euclidean distances.
  static TriangulatedSurface from_positions(std::vector<Point3> positions,
                                            std::vector<Triangle> faces);

  /// Same combinatorics, new metric. `lengths` is indexed by EdgeId.
  TriangulatedSurface with_edge_lengths(std::vector<double> lengths) const;

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  const Triangle& face(FaceId f) const { return faces_[f]; }
  std::span<const Triangle> faces() const { return faces_; }
  const EdgeKey& edge(EdgeId e) const { return edges_[e]; }
  std::span<const EdgeKey> edges() const { return edges_; }
  double edge_length(EdgeId e) const { return lengths_[e]; }
  std::span<const double> edge_lengths() const { return lengths_; }

  /// Edges of face f, in the order (v0 v1), (v1 v2), (v2 v0).
  const std::array<EdgeId, 3>& face_edges(FaceId f) const { return face_edges_[f]; }
  /// The two faces incident to edge e, smaller index first.
  const std::array<FaceId, 2>& edge_faces(EdgeId e) const { return edge_faces_[e]; }
  /// Neighbouring face across edge `local` (0..2) of face f.
  FaceId face_neighbor(FaceId f, int local) const;

  std::span<const EdgeId> vertex_edges(VertexId v) const { return vertex_edges_[v]; }
  std::span<const FaceId> vertex_faces(VertexId v) const { return vertex_faces_[v]; }
  VertexId other_vertex(EdgeId e, VertexId v) const;

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  EdgeId edge_id(VertexId a, VertexId b) const;  // throws InputError if absent

  double face_area(FaceId f) const { return face_areas_[f]; }
  std::span<const double> face_areas() const { return face_areas_; }
  double total_area() const { return total_area_; }
  /// Interior angle of face f at its local corner k.
  double corner_angle(FaceId f, int k) const;

  const std::optional<std::vector<Point3>>& positions() const { return positions_; }
  int euler_characteristic() const { return vertex_count_ - edge_count() + face_count(); }

 private:
  TriangulatedSurface() = default;
  void build_topology();
  void validate_topology() const;
  void compute_areas();

  int vertex_count_ = 0;
  std::vector<Triangle> faces_;
  std::vector<EdgeKey> edges_;
  std::vector<double> lengths_;
  std::vector<std::array<EdgeId, 3>> face_edges_;
  std::vector<std::array<FaceId, 2>> edge_faces_;
  std::vector<std::vector<EdgeId>> vertex_edges_;
  std::vector<std::vector<FaceId>> vertex_faces_;
  std::unordered_map<std::uint64_t, EdgeId> edge_lookup_;
  std::vector<double> face_areas_;
  double total_area_ = 0.0;
  std::optional<std::vector<Point3>> positions_;
};

/// Area of a triangle from its side lengths (Kahan's stable form of Heron's
/// formula). Throws InvalidMetricError unless the strict triangle
/// inequalities hold.
double triangle_area(double a, double b, double c);

/// Angle opposite side `a` in a triangle with sides a, b, c.
double triangle_angle(double a, double b, double c);

}  // namespace stretchlab
