#include "stretchlab/collar.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "stretchlab/errors.hpp"
#include "stretchlab/measure.hpp"

namespace stretchlab {

namespace {

std::optional<FaceId> find_face(const TriangulatedSurface& s, VertexId a, VertexId b, VertexId c) {
  for (FaceId f : s.vertex_faces(a)) {
    const auto& t = s.face(f);
    auto has = [&](VertexId v) { return t[0] == v || t[1] == v || t[2] == v; };
    if (has(b) && has(c)) return f;
  }
  return std::nullopt;
}

constexpr double kProductTolerance = 1e-9;

}  // namespace

Cycle Collar::ring_cycle(int j) const { return Cycle(fibre_edges_.at(j)); }

Region Collar::band_faces(int first_band, int last_band) const {
  std::vector<FaceId> faces;
  for (int b = first_band; b < last_band; ++b) {
    for (const auto& q : quads_.at(b)) {
      faces.push_back(q.faces[0]);
      faces.push_back(q.faces[1]);
    }
  }
  return Region(std::move(faces));
}

std::vector<int> Collar::rings_towards_sigma(Side side) const {
  std::vector<int> out;
  if (side == Side::Minus) {
    for (int j = 0; j <= sigma_index_; ++j) out.push_back(j);
  } else {
    for (int j = ring_count() - 1; j >= sigma_index_; --j) out.push_back(j);
  }
  return out;
}

Collar make_collar(const TriangulatedSurface& surface, std::vector<std::vector<VertexId>> rings,
                   int sigma_index) {
  if (rings.size() < 3) throw StructuralError("collar needs at least three rings");
  if (sigma_index <= 0 || sigma_index >= static_cast<int>(rings.size()) - 1) {
    throw StructuralError("Sigma must lie strictly between the collar boundary rings");
  }
  const std::size_t m = rings.front().size();
  if (m < 3) throw StructuralError("rings need at least three vertices");
  std::vector<char> used(surface.vertex_count(), 0);
  for (const auto& r : rings) {
    if (r.size() != m) throw StructuralError("rings differ in size; no product structure");
    for (VertexId v : r) {
      if (v < 0 || v >= surface.vertex_count()) throw InputError("ring references unknown vertex");
      if (used[v]) throw StructuralError("rings are not pairwise disjoint");
      used[v] = 1;
    }
  }

  Collar c;
  c.rings_ = std::move(rings);
  c.sigma_index_ = sigma_index;
  const int nr = c.ring_count();
  const int mi = static_cast<int>(m);

  auto require_edge = [&](VertexId a, VertexId b, const char* what) {
    auto e = surface.find_edge(a, b);
    if (!e) {
      throw StructuralError(std::string("collar is missing a ") + what + " edge (" +
                            std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    return *e;
  };

  c.fibre_edges_.resize(nr);
  for (int j = 0; j < nr; ++j) {
    for (int i = 0; i < mi; ++i) {
      c.fibre_edges_[j].push_back(require_edge(c.rings_[j][i], c.rings_[j][(i + 1) % mi], "fibre"));
    }
  }

  c.longitudinal_edges_.resize(nr - 1);
  c.quads_.resize(nr - 1);
  c.offsets_.assign(nr, 0.0);
  for (int b = 0; b + 1 < nr; ++b) {
    double reference = 0.0;
    for (int i = 0; i < mi; ++i) {
      const VertexId a0 = c.rings_[b][i];
      const VertexId a1 = c.rings_[b][(i + 1) % mi];
      const VertexId b0 = c.rings_[b + 1][i];
      const VertexId b1 = c.rings_[b + 1][(i + 1) % mi];
      const EdgeId lon = require_edge(a0, b0, "longitudinal");
      c.longitudinal_edges_[b].push_back(lon);
      const double len = surface.edge_length(lon);
      if (i == 0) {
        reference = len;
      } else if (std::abs(len - reference) > kProductTolerance * reference) {
        throw StructuralError("band " + std::to_string(b) +
                              " has unequal longitudinal lengths; no product structure");
      }

      Collar::Quad q{};
      if (auto d = surface.find_edge(a0, b1)) {
        auto f0 = find_face(surface, a0, a1, b1);
        auto f1 = find_face(surface, a0, b1, b0);
        if (!f0 || !f1) throw StructuralError("collar quad is not triangulated by its diagonal");
        q = {{std::min(*f0, *f1), std::max(*f0, *f1)}, *d};
      } else if (auto d2 = surface.find_edge(a1, b0)) {
        auto f0 = find_face(surface, a0, a1, b0);
        auto f1 = find_face(surface, a1, b1, b0);
        if (!f0 || !f1) throw StructuralError("collar quad is not triangulated by its diagonal");
        q = {{std::min(*f0, *f1), std::max(*f0, *f1)}, *d2};
      } else {
        throw StructuralError("collar quad has no diagonal");
      }
      c.quads_[b].push_back(q);
    }
    c.offsets_[b + 1] = c.offsets_[b] + reference;
  }
  return c;
}

Region sigma_side(const TriangulatedSurface& surface, const Collar& collar, Side side) {
  const auto sep = separates(surface, collar.sigma());
  if (!sep.separates) throw StructuralError("Sigma does not separate the surface");
  const int band = side == Side::Minus ? 0 : collar.band_count() - 1;
  const FaceId probe = collar.quad(band, 0).faces[0];
  return sep.side_a.contains(probe) ? sep.side_a : sep.side_b;
}

bool homologous_to_sigma(const TriangulatedSurface& surface, const Collar& collar,
                         const Cycle& cycle) {
  check_cycle(surface, cycle);
  if (cycle.empty()) return false;
  const Region collar_faces = collar.faces();
  std::vector<char> in_collar(surface.face_count(), 0);
  for (FaceId f : collar_faces.faces()) in_collar[f] = 1;
  for (EdgeId e : cycle.edges()) {
    const auto& ef = surface.edge_faces(e);
    if (!in_collar[ef[0]] || !in_collar[ef[1]]) return false;
  }

  std::vector<int> label(surface.face_count(), -1);
  int components = 0;
  for (FaceId seed : collar_faces.faces()) {
    if (label[seed] >= 0) continue;
    std::vector<FaceId> stack{seed};
    label[seed] = components;
    while (!stack.empty()) {
      const FaceId f = stack.back();
      stack.pop_back();
      for (int k = 0; k < 3; ++k) {
        if (cycle.contains(surface.face_edges(f)[k])) continue;
        const FaceId g = surface.face_neighbor(f, k);
        if (in_collar[g] && label[g] < 0) {
          label[g] = components;
          stack.push_back(g);
        }
      }
    }
    ++components;
  }
  if (components != 2) return false;

  auto rim_label = [&](int ring) {
    int lab = -2;
    for (int i = 0; i < collar.fibre_size(); ++i) {
      const auto& ef = surface.edge_faces(collar.fibre_edge(ring, i));
      for (FaceId f : ef) {
        if (!in_collar[f]) continue;
        if (lab == -2) lab = label[f];
        else if (lab != label[f]) return -1;
      }
    }
    return lab;
  };
  const int lo = rim_label(0);
  const int hi = rim_label(collar.ring_count() - 1);
  return lo >= 0 && hi >= 0 && lo != hi;
}

}  // namespace stretchlab
