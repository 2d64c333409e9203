#pragma once

// Fixtures and oracles shared by the unit and acceptance tests. The oracles
// deliberately avoid the solver code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include "stretchlab/surface.hpp"

namespace stretchlab::test_support {

// Three triangular rings capped by single triangles: 12 vertices, 20 faces.
inline TriangulatedSurface small_dumbbell() {
  const std::vector<double> radius{1.0, 0.55, 0.6, 1.15};
  const std::vector<double> height{0.0, 0.7, 1.5, 2.1};
  std::vector<Point3> pts;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 3; ++i) {
      const double a = 2.0 * std::numbers::pi * i / 3.0 + 0.1 * j;
      pts.push_back({radius[j] * std::cos(a), radius[j] * std::sin(a), height[j]});
    }
  }
  std::vector<Triangle> faces{{0, 2, 1}};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      const int a = 3 * j + i, b = 3 * j + (i + 1) % 3;
      const int c = a + 3, d = b + 3;
      faces.push_back({a, b, d});
      faces.push_back({a, d, c});
    }
  }
  faces.push_back({9, 10, 11});
  return TriangulatedSurface::from_positions(std::move(pts), std::move(faces));
}

struct ProfileSample {
  double volume;
  double perimeter;  // smallest over all subsets with this volume
};

// Every subset of faces, grouped by volume (relative gap 1e-12 of the total).
inline std::vector<ProfileSample> exhaustive_profile(const TriangulatedSurface& s) {
  const int F = s.face_count();
  std::vector<std::pair<int, int>> edge_faces;
  std::vector<double> len;
  for (int e = 0; e < s.edge_count(); ++e) {
    edge_faces.push_back({s.edge_faces(e)[0], s.edge_faces(e)[1]});
    len.push_back(s.edge_length(e));
  }
  std::map<double, double> best;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << F); ++m) {
    double v = 0.0, p = 0.0;
    for (int f = 0; f < F; ++f) {
      if ((m >> f) & 1) v += s.face_area(f);
    }
    for (std::size_t e = 0; e < len.size(); ++e) {
      if (((m >> edge_faces[e].first) & 1) != ((m >> edge_faces[e].second) & 1)) p += len[e];
    }
    auto [it, fresh] = best.try_emplace(v, p);
    if (!fresh) it->second = std::min(it->second, p);
  }
  const double gap = 1e-12 * s.total_area();
  std::vector<ProfileSample> out;
  for (const auto& [v, p] : best) {
    if (!out.empty() && v - out.back().volume <= gap) {
      out.back().perimeter = std::min(out.back().perimeter, p);
    } else {
      out.push_back({v, p});
    }
  }
  return out;
}

// Smallest perimeter over subsets with |volume - target| <= tol.
inline double oracle_min(const std::vector<ProfileSample>& profile, double target, double tol) {
  double best = INFINITY;
  for (const auto& s : profile) {
    if (std::abs(s.volume - target) <= tol) best = std::min(best, s.perimeter);
  }
  return best;
}

// Vertices of the lower convex hull of the profile: the volumes a
// perimeter - lambda volume sweep can expose.
inline std::vector<ProfileSample> lower_hull(const std::vector<ProfileSample>& profile) {
  std::vector<ProfileSample> hull;
  auto cross = [](const ProfileSample& o, const ProfileSample& a, const ProfileSample& b) {
    return (a.volume - o.volume) * (b.perimeter - o.perimeter) - (a.perimeter - o.perimeter) * (b.volume - o.volume);
  };
  for (const auto& p : profile) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 1e-12) hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

// Lower hull of the profile over [0, total / 2]. Both ends of the full
// profile sit at perimeter 0, so the full hull is trivial; by complement
// symmetry the half profile carries the information.
inline std::vector<ProfileSample> half_hull(const std::vector<ProfileSample>& profile, double total) {
  std::vector<ProfileSample> half;
  for (const auto& p : profile) {
    if (p.volume <= 0.5 * total * (1 + 1e-12)) half.push_back(p);
  }
  return lower_hull(half);
}

}  // namespace stretchlab::test_support
