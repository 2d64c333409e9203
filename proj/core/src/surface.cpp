#include "stretchlab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stretchlab/errors.hpp"

namespace stretchlab {

namespace {

std::uint64_t pack(VertexId a, VertexId b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

double distance(const Point3& a, const Point3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

EdgeKey make_edge_key(VertexId a, VertexId b) {
  return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

Region::Region(std::vector<FaceId> faces) : faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
}

bool Region::contains(FaceId f) const {
  return std::binary_search(faces_.begin(), faces_.end(), f);
}

Cycle::Cycle(std::vector<EdgeId> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Cycle::contains(EdgeId e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

double triangle_area(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
    throw InvalidMetricError("non-positive edge length in triangle");
  }
  // Kahan: sort a >= b >= c, then the bracketed products stay accurate for
  // needle-like triangles.
  if (a < b) std::swap(a, b);
  if (a < c) std::swap(a, c);
  if (b < c) std::swap(b, c);
  if (!(a < b + c)) {
    throw InvalidMetricError("triangle inequality violated: " + std::to_string(a) +
                             " >= " + std::to_string(b) + " + " + std::to_string(c));
  }
  const double p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return 0.25 * std::sqrt(p);
}

double triangle_angle(double a, double b, double c) {
  const double cosine = (b * b + c * c - a * a) / (2.0 * b * c);
  return std::acos(std::clamp(cosine, -1.0, 1.0));
}

TriangulatedSurface TriangulatedSurface::from_lengths(int vertex_count, std::vector<Triangle> faces,
                                                      const std::map<EdgeKey, double>& lengths,
                                                      std::optional<std::vector<Point3>> positions) {
  TriangulatedSurface s;
  s.vertex_count_ = vertex_count;
  s.faces_ = std::move(faces);
  s.positions_ = std::move(positions);
  s.build_topology();
  s.lengths_.resize(s.edges_.size());
  for (std::size_t e = 0; e < s.edges_.size(); ++e) {
    auto it = lengths.find(s.edges_[e]);
    if (it == lengths.end()) {
      throw InputError("missing length for edge (" + std::to_string(s.edges_[e].v0) + ", " +
                       std::to_string(s.edges_[e].v1) + ")");
    }
    s.lengths_[e] = it->second;
  }
  s.compute_areas();
  return s;
}

TriangulatedSurface TriangulatedSurface::from_positions(std::vector<Point3> positions,
                                                        std::vector<Triangle> faces) {
  TriangulatedSurface s;
  s.vertex_count_ = static_cast<int>(positions.size());
  s.faces_ = std::move(faces);
  s.build_topology();
  s.lengths_.resize(s.edges_.size());
  for (std::size_t e = 0; e < s.edges_.size(); ++e) {
    s.lengths_[e] = distance(positions[s.edges_[e].v0], positions[s.edges_[e].v1]);
  }
  s.positions_ = std::move(positions);
  s.compute_areas();
  return s;
}

TriangulatedSurface TriangulatedSurface::with_edge_lengths(std::vector<double> lengths) const {
  if (lengths.size() != edges_.size()) {
    throw InputError("edge length vector has wrong size");
  }
  TriangulatedSurface s(*this);
  s.lengths_ = std::move(lengths);
  s.positions_.reset();
  s.compute_areas();
  return s;
}

void TriangulatedSurface::build_topology() {
  if (vertex_count_ <= 0) throw InputError("surface needs at least one vertex");
  if (faces_.empty()) throw InputError("surface needs at least one face");

  std::vector<EdgeKey> keys;
  keys.reserve(faces_.size() * 3);
  for (const auto& t : faces_) {
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= vertex_count_) {
        throw InputError("face references unknown vertex " + std::to_string(t[k]));
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw StructuralError("degenerate face with repeated vertex");
    }
    for (int k = 0; k < 3; ++k) keys.push_back(make_edge_key(t[k], t[(k + 1) % 3]));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  edges_ = std::move(keys);

  edge_lookup_.clear();
  edge_lookup_.reserve(edges_.size() * 2);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    edge_lookup_.emplace(pack(edges_[e].v0, edges_[e].v1), static_cast<EdgeId>(e));
  }

  face_edges_.assign(faces_.size(), {-1, -1, -1});
  edge_faces_.assign(edges_.size(), {-1, -1});
  std::vector<int> incidence(edges_.size(), 0);
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const auto& t = faces_[f];
    for (int k = 0; k < 3; ++k) {
      const EdgeKey key = make_edge_key(t[k], t[(k + 1) % 3]);
      const EdgeId e = edge_lookup_.at(pack(key.v0, key.v1));
      face_edges_[f][k] = e;
      if (incidence[e] >= 2) {
        throw StructuralError("edge (" + std::to_string(key.v0) + ", " + std::to_string(key.v1) +
                              ") has more than two incident faces");
      }
      edge_faces_[e][incidence[e]++] = static_cast<FaceId>(f);
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (incidence[e] != 2) {
      throw StructuralError("edge (" + std::to_string(edges_[e].v0) + ", " +
                            std::to_string(edges_[e].v1) + ") is a boundary edge; surface must be closed");
    }
  }

  vertex_edges_.assign(vertex_count_, {});
  vertex_faces_.assign(vertex_count_, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    vertex_edges_[edges_[e].v0].push_back(static_cast<EdgeId>(e));
    vertex_edges_[edges_[e].v1].push_back(static_cast<EdgeId>(e));
  }
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    for (VertexId v : faces_[f]) vertex_faces_[v].push_back(static_cast<FaceId>(f));
  }
  validate_topology();
}

void TriangulatedSurface::validate_topology() const {
  // Vertex links must be single cycles.
  for (VertexId v = 0; v < vertex_count_; ++v) {
    const auto& star = vertex_faces_[v];
    if (star.empty()) throw StructuralError("vertex " + std::to_string(v) + " is isolated");
    std::map<VertexId, std::vector<VertexId>> link;
    for (FaceId f : star) {
      std::array<VertexId, 2> others{};
      int n = 0;
      for (VertexId w : faces_[f]) {
        if (w != v) others[n++] = w;
      }
      link[others[0]].push_back(others[1]);
      link[others[1]].push_back(others[0]);
    }
    for (const auto& [w, nbrs] : link) {
      if (nbrs.size() != 2) {
        throw StructuralError("link of vertex " + std::to_string(v) + " is not a cycle");
      }
    }
    // Walk the link once around.
    const VertexId start = link.begin()->first;
    VertexId prev = start;
    VertexId cur = link.begin()->second[0];
    std::size_t steps = 1;
    while (cur != start && steps <= link.size()) {
      const auto& nbrs = link.at(cur);
      const VertexId next = nbrs[0] == prev ? nbrs[1] : nbrs[0];
      prev = cur;
      cur = next;
      ++steps;
    }
    if (cur != start || steps != link.size()) {
      throw StructuralError("link of vertex " + std::to_string(v) + " is not a single cycle");
    }
  }

  // Connectivity over the face adjacency graph.
  std::vector<char> seen(faces_.size(), 0);
  std::vector<FaceId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const FaceId f = stack.back();
    stack.pop_back();
    for (EdgeId e : face_edges_[f]) {
      for (FaceId g : edge_faces_[e]) {
        if (!seen[g]) {
          seen[g] = 1;
          ++count;
          stack.push_back(g);
        }
      }
    }
  }
  if (count != faces_.size()) throw StructuralError("surface is not connected");
}

void TriangulatedSurface::compute_areas() {
  face_areas_.resize(faces_.size());
  total_area_ = 0.0;
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const auto& fe = face_edges_[f];
    for (EdgeId e : fe) {
      if (!(lengths_[e] > 0.0) || !std::isfinite(lengths_[e])) {
        throw InvalidMetricError("edge length must be positive and finite");
      }
    }
    face_areas_[f] = triangle_area(lengths_[fe[0]], lengths_[fe[1]], lengths_[fe[2]]);
    total_area_ += face_areas_[f];
  }
}

FaceId TriangulatedSurface::face_neighbor(FaceId f, int local) const {
  const auto& ef = edge_faces_[face_edges_[f][local]];
  return ef[0] == f ? ef[1] : ef[0];
}

VertexId TriangulatedSurface::other_vertex(EdgeId e, VertexId v) const {
  return edges_[e].v0 == v ? edges_[e].v1 : edges_[e].v0;
}

std::optional<EdgeId> TriangulatedSurface::find_edge(VertexId a, VertexId b) const {
  const EdgeKey k = make_edge_key(a, b);
  auto it = edge_lookup_.find(pack(k.v0, k.v1));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

EdgeId TriangulatedSurface::edge_id(VertexId a, VertexId b) const {
  auto e = find_edge(a, b);
  if (!e) {
    throw InputError("no edge between vertices " + std::to_string(a) + " and " + std::to_string(b));
  }
  return *e;
}

double TriangulatedSurface::corner_angle(FaceId f, int k) const {
  // Corner k sits between edges k-1 and k; the opposite edge is k+1.
  const auto& fe = face_edges_[f];
  const double opposite = lengths_[fe[(k + 1) % 3]];
  const double b = lengths_[fe[k]];
  const double c = lengths_[fe[(k + 2) % 3]];
  return triangle_angle(opposite, b, c);
}

}  // namespace stretchlab
