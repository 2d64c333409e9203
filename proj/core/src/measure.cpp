#include "stretchlab/measure.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "stretchlab/errors.hpp"

namespace stretchlab {

namespace {

std::vector<char> membership(const TriangulatedSurface& surface, const Region& region) {
  std::vector<char> inside(surface.face_count(), 0);
  for (FaceId f : region.faces()) inside[f] = 1;
  return inside;
}

}  // namespace

void check_region(const TriangulatedSurface& surface, const Region& region) {
  for (FaceId f : region.faces()) {
    if (f < 0 || f >= surface.face_count()) {
      throw InputError("unknown face index " + std::to_string(f));
    }
  }
}

void check_cycle(const TriangulatedSurface& surface, const Cycle& cycle) {
  for (EdgeId e : cycle.edges()) {
    if (e < 0 || e >= surface.edge_count()) {
      throw InputError("unknown edge index " + std::to_string(e));
    }
  }
}

Cycle cut_edges(const TriangulatedSurface& surface, const Region& region) {
  check_region(surface, region);
  const auto inside = membership(surface, region);
  std::vector<EdgeId> cut;
  for (EdgeId e = 0; e < surface.edge_count(); ++e) {
    const auto& ef = surface.edge_faces(e);
    if (inside[ef[0]] != inside[ef[1]]) cut.push_back(e);
  }
  return Cycle(std::move(cut));
}

double cycle_length(const TriangulatedSurface& surface, const Cycle& cycle) {
  double total = 0.0;
  for (EdgeId e : cycle.edges()) total += surface.edge_length(e);
  return total;
}

double perimeter(const TriangulatedSurface& surface, const Region& region) {
  return cycle_length(surface, cut_edges(surface, region));
}

double volume(const TriangulatedSurface& surface, const Region& region) {
  check_region(surface, region);
  double total = 0.0;
  for (FaceId f : region.faces()) total += surface.face_area(f);
  return total;
}

Region complement(const TriangulatedSurface& surface, const Region& region) {
  check_region(surface, region);
  const auto inside = membership(surface, region);
  std::vector<FaceId> out;
  for (FaceId f = 0; f < surface.face_count(); ++f) {
    if (!inside[f]) out.push_back(f);
  }
  return Region(std::move(out));
}

Region full_region(const TriangulatedSurface& surface) {
  std::vector<FaceId> all(surface.face_count());
  std::iota(all.begin(), all.end(), 0);
  return Region(std::move(all));
}

std::vector<double> vertex_distances(const TriangulatedSurface& surface,
                                     std::span<const VertexId> sources) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(surface.vertex_count(), inf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (VertexId s : sources) {
    if (s < 0 || s >= surface.vertex_count()) throw InputError("unknown vertex index");
    dist[s] = 0.0;
    queue.emplace(0.0, s);
  }
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (EdgeId e : surface.vertex_edges(v)) {
      const VertexId w = surface.other_vertex(e, v);
      const double nd = d + surface.edge_length(e);
      if (nd < dist[w]) {
        dist[w] = nd;
        queue.emplace(nd, w);
      }
    }
  }
  return dist;
}

double set_distance(const TriangulatedSurface& surface, std::span<const VertexId> from,
                    std::span<const VertexId> to) {
  const auto dist = vertex_distances(surface, from);
  double best = std::numeric_limits<double>::infinity();
  for (VertexId v : to) best = std::min(best, dist[v]);
  return best;
}

std::vector<VertexId> cycle_vertices(const TriangulatedSurface& surface, const Cycle& cycle) {
  std::vector<VertexId> verts;
  for (EdgeId e : cycle.edges()) {
    verts.push_back(surface.edge(e).v0);
    verts.push_back(surface.edge(e).v1);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

std::vector<BoundaryComponent> boundary_components(const TriangulatedSurface& surface,
                                                   const Region& region) {
  const Cycle cut = cut_edges(surface, region);
  const auto edges = cut.edges();
  if (edges.empty()) return {};

  // Union-find over cut edges, joined through shared vertices.
  std::vector<int> parent(edges.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  std::vector<int> first_at_vertex(surface.vertex_count(), -1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (VertexId v : {surface.edge(edges[i]).v0, surface.edge(edges[i]).v1}) {
      if (first_at_vertex[v] < 0) {
        first_at_vertex[v] = static_cast<int>(i);
      } else {
        const int a = find(first_at_vertex[v]);
        const int b = find(static_cast<int>(i));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  // Edges are sorted, so the root order is already the smallest-edge order.
  std::vector<int> slot(edges.size(), -1);
  std::vector<std::vector<EdgeId>> groups;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int r = find(static_cast<int>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(edges[i]);
  }

  std::vector<BoundaryComponent> out;
  out.reserve(groups.size());
  for (auto& g : groups) {
    BoundaryComponent comp;
    comp.cycle = Cycle(std::move(g));
    comp.length = cycle_length(surface, comp.cycle);
    const auto verts = cycle_vertices(surface, comp.cycle);
    for (VertexId v : verts) {
      const VertexId src[] = {v};
      const auto dist = vertex_distances(surface, src);
      for (VertexId w : verts) comp.diameter = std::max(comp.diameter, dist[w]);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

Separation separates(const TriangulatedSurface& surface, const Cycle& cycle) {
  check_cycle(surface, cycle);
  if (cycle.empty()) return {};
  std::vector<int> label(surface.face_count(), -1);
  int components = 0;
  for (FaceId seed = 0; seed < surface.face_count(); ++seed) {
    if (label[seed] >= 0) continue;
    std::vector<FaceId> stack{seed};
    label[seed] = components;
    while (!stack.empty()) {
      const FaceId f = stack.back();
      stack.pop_back();
      for (int k = 0; k < 3; ++k) {
        if (cycle.contains(surface.face_edges(f)[k])) continue;
        const FaceId g = surface.face_neighbor(f, k);
        if (label[g] < 0) {
          label[g] = components;
          stack.push_back(g);
        }
      }
    }
    ++components;
  }
  if (components != 2) return {};

  // Every cycle edge must actually sit between the two sides.
  for (EdgeId e : cycle.edges()) {
    const auto& ef = surface.edge_faces(e);
    if (label[ef[0]] == label[ef[1]]) return {};
  }
  std::vector<FaceId> a;
  std::vector<FaceId> b;
  for (FaceId f = 0; f < surface.face_count(); ++f) (label[f] == 0 ? a : b).push_back(f);
  return {true, Region(std::move(a)), Region(std::move(b))};
}

}  // namespace stretchlab
