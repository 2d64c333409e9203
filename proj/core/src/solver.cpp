#include "stretchlab/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "solver_internal.hpp"
#include "stretchlab/branch_and_bound.hpp"
#include "stretchlab/errors.hpp"
#include "stretchlab/maxflow.hpp"
#include "stretchlab/measure.hpp"
#include "stretchlab/parallel.hpp"

namespace stretchlab {

const char* to_string(Method m) {
  switch (m) {
    case Method::Brute: return "brute";
    case Method::Mincut: return "mincut";
    case Method::Repaired: return "repaired";
    case Method::Exact: return "exact";
  }
  return "?";
}

bool canonical_less(const Region& a, const Region& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

double default_volume_tolerance(const TriangulatedSurface& surface) {
  const auto areas = surface.face_areas();
  return 0.5 * *std::min_element(areas.begin(), areas.end());
}

namespace detail {

double lambda_bound(const TriangulatedSurface& surface) {
  const auto lengths = surface.edge_lengths();
  const auto areas = surface.face_areas();
  const double total_length = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  const double min_area = *std::min_element(areas.begin(), areas.end());
  return 2.0 * total_length / min_area + 1.0;
}

Region to_region(const std::vector<char>& in) {
  std::vector<FaceId> faces;
  for (std::size_t f = 0; f < in.size(); ++f) {
    if (in[f]) faces.push_back(static_cast<FaceId>(f));
  }
  return Region(std::move(faces));
}

IsoPoint make_point(const TriangulatedSurface& surface, Region region, Method method,
                    bool certified, double lambda) {
  IsoPoint p;
  p.volume = volume(surface, region);
  p.perimeter = perimeter(surface, region);
  p.region = std::move(region);
  p.method = method;
  p.certified_optimal = certified;
  p.lambda = lambda;
  return p;
}

bool better(const IsoPoint& a, const IsoPoint& b) {
  if (a.perimeter != b.perimeter) return a.perimeter < b.perimeter;
  return canonical_less(a.region, b.region);
}

// Dual graph: one node per face plus s and t. Edge lengths are symmetric
// arcs; lambda Vol becomes source (lambda > 0) or sink (lambda < 0) arcs.
MaxFlow solved_network(const TriangulatedSurface& surface, double lambda,
                      const std::vector<signed char>& state) {
  const int F = surface.face_count();
  const int s = F, t = F + 1;
  MaxFlow net(F + 2);
  double big = 1.0 + std::abs(lambda) * surface.total_area();
  for (int e = 0; e < surface.edge_count(); ++e) {
    const auto [f, g] = surface.edge_faces(e);
    const double l = surface.edge_length(e);
    big += l;
    net.add_edge(f, g, l, l);
  }
  for (int f = 0; f < F; ++f) {
    if (state[f] == kIn) {
      net.add_edge(s, f, big);
    } else if (state[f] == kOut) {
      net.add_edge(f, t, big);
    } else if (lambda > 0.0) {
      net.add_edge(s, f, lambda * surface.face_area(f));
    } else if (lambda < 0.0) {
      net.add_edge(f, t, -lambda * surface.face_area(f));
    }
  }
  net.solve(s, t);
  return net;
}

CutResult constrained_cut(const TriangulatedSurface& surface, double lambda,
                          const std::vector<signed char>& state) {
  const int F = surface.face_count();
  const MaxFlow net = solved_network(surface, lambda, state);
  const auto side = net.source_side();
  CutResult r;
  r.in.assign(side.begin(), side.begin() + F);
  const Region region = to_region(r.in);
  r.volume = volume(surface, region);
  r.perimeter = perimeter(surface, region);
  return r;
}

}  // namespace detail

using namespace detail;

namespace {

// Enumeration beyond this is out of reach whatever the caller asks for.
constexpr int kBruteHardCap = 40;

std::vector<signed char> make_state(int F, const std::vector<FaceId>& in,
                                    const std::vector<FaceId>& out) {
  std::vector<signed char> state(F, kFree);
  for (FaceId f : in) {
    if (f < 0 || f >= F) throw InputError("fixed face out of range");
    state[f] = kIn;
  }
  for (FaceId f : out) {
    if (f < 0 || f >= F) throw InputError("fixed face out of range");
    if (state[f] == kIn) throw InputError("face fixed both in and out");
    state[f] = kOut;
  }
  return state;
}

// At a critical multiplier every closure between the smallest and the
// largest minimiser is optimal. Walk the residual components in reverse
// topological order and keep the prefix whose volume is nearest `target`.
std::vector<char> tie_walk(const TriangulatedSurface& surface, double lambda,
                           const std::vector<signed char>& state, double target) {
  const int F = surface.face_count();
  const int t = F + 1;
  const MaxFlow net = solved_network(surface, lambda, state);

  const auto reach = net.source_side();
  // Nodes with a residual path to t.
  std::vector<std::vector<int>> reverse(F + 2);
  for (int u = 0; u < F + 2; ++u) net.for_each_residual(u, [&](int v) { reverse[v].push_back(u); });
  std::vector<char> to_sink(F + 2, 0);
  std::vector<int> stack{t};
  to_sink[t] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : reverse[v]) {
      if (!to_sink[u]) {
        to_sink[u] = 1;
        stack.push_back(u);
      }
    }
  }

  int count = 0;
  const auto comp = net.residual_components(count);
  std::vector<double> comp_volume(count, 0.0);
  std::vector<char> eligible(count, 1);
  for (int u = 0; u < F + 2; ++u) {
    if (u >= F || reach[u] || to_sink[u]) eligible[comp[u]] = 0;
  }
  for (int f = 0; f < F; ++f) {
    if (eligible[comp[f]]) comp_volume[comp[f]] += surface.face_area(f);
  }
  double v = 0.0;
  for (int f = 0; f < F; ++f) {
    if (reach[f]) v += surface.face_area(f);
  }
  int best_prefix = -1;
  double best_gap = std::abs(v - target);
  for (int c = 0; c < count; ++c) {
    if (!eligible[c]) continue;
    v += comp_volume[c];
    const double gap = std::abs(v - target);
    if (gap < best_gap) {
      best_gap = gap;
      best_prefix = c;
    }
  }
  std::vector<char> in(F, 0);
  for (int f = 0; f < F; ++f) {
    in[f] = reach[f] || (eligible[comp[f]] && comp[f] <= best_prefix);
  }
  return in;
}

struct Candidates {
  std::optional<IsoPoint> best;
  void offer(IsoPoint p) {
    if (!best || better(p, *best)) best = std::move(p);
  }
};

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

// Bisection in lambda with the given face states. Offers every window hit;
// otherwise tries the tie walk at the bracketing secant and repairs from
// both brackets.
void bisect_and_offer(const TriangulatedSurface& surface, const std::vector<signed char>& state,
                      double target, double tol, const SolverSettings& settings, bool certify,
                      Candidates& out) {
  const double Lambda = lambda_bound(surface);
  // Without fixed faces every negative multiplier gives the empty set.
  double lo = certify ? 0.0 : -Lambda, hi = Lambda;
  CutResult c_lo = constrained_cut(surface, lo, state);
  CutResult c_hi = constrained_cut(surface, hi, state);
  auto hit = [&](const CutResult& c, double lambda) {
    if (!within(c.volume, target, tol)) return false;
    out.offer(make_point(surface, to_region(c.in), Method::Mincut, certify, lambda));
    return true;
  };
  if (hit(c_lo, lo) || hit(c_hi, hi)) return;
  if (c_lo.volume > target + tol || c_hi.volume < target - tol) return;
  for (int step = 0; step < settings.bisection_steps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    CutResult c = constrained_cut(surface, mid, state);
    if (hit(c, mid)) return;
    if (c.volume < target) {
      lo = mid;
      c_lo = std::move(c);
    } else {
      hi = mid;
      c_hi = std::move(c);
    }
  }
  if (c_hi.volume > c_lo.volume) {
    const double critical = (c_hi.perimeter - c_lo.perimeter) / (c_hi.volume - c_lo.volume);
    const auto in = tie_walk(surface, critical, state, target);
    Region r = to_region(in);
    const double v = volume(surface, r);
    if (within(v, target, tol)) out.offer(make_point(surface, std::move(r), Method::Mincut, false, critical));
  }
  for (const CutResult* c : {&c_lo, &c_hi}) {
    auto repaired = repair_region(surface, to_region(c->in), target, tol, settings.repair_budget);
    if (repaired) out.offer(std::move(*repaired));
  }
}

std::vector<FaceId> farthest_seeds(const TriangulatedSurface& surface, int k,
                                   std::vector<std::vector<double>>& face_dist) {
  const int F = surface.face_count();
  auto distances_from = [&](FaceId f) {
    const auto& tri = surface.face(f);
    const std::vector<VertexId> src(tri.begin(), tri.end());
    const auto dv = vertex_distances(surface, src);
    std::vector<double> df(F);
    for (int g = 0; g < F; ++g) {
      const auto& t = surface.face(g);
      df[g] = std::min({dv[t[0]], dv[t[1]], dv[t[2]]});
    }
    return df;
  };
  std::vector<FaceId> seeds;
  face_dist.clear();
  const auto d0 = distances_from(0);
  FaceId first = static_cast<FaceId>(std::max_element(d0.begin(), d0.end()) - d0.begin());
  seeds.push_back(first);
  face_dist.push_back(distances_from(first));
  std::vector<double> nearest = face_dist.back();
  while (static_cast<int>(seeds.size()) < std::min(k, F)) {
    const FaceId next = static_cast<FaceId>(std::max_element(nearest.begin(), nearest.end()) - nearest.begin());
    if (nearest[next] <= 0.0) break;
    seeds.push_back(next);
    face_dist.push_back(distances_from(next));
    for (int g = 0; g < F; ++g) nearest[g] = std::min(nearest[g], face_dist.back()[g]);
  }
  return seeds;
}

}  // namespace

IsoPoint lagrangian_cut(const TriangulatedSurface& surface, double lambda,
                        const std::vector<FaceId>& fixed_in, const std::vector<FaceId>& fixed_out) {
  if (!std::isfinite(lambda)) throw InputError("lambda must be finite");
  const auto state = make_state(surface.face_count(), fixed_in, fixed_out);
  const CutResult c = constrained_cut(surface, lambda, state);
  const bool free = fixed_in.empty() && fixed_out.empty();
  return make_point(surface, to_region(c.in), Method::Mincut, free, lambda);
}

std::vector<IsoPoint> mincut_sweep(const TriangulatedSurface& surface,
                                   const std::vector<double>& lambda_grid) {
  std::vector<IsoPoint> out(lambda_grid.size());
  parallel_for(lambda_grid.size(), [&](std::size_t i) { out[i] = lagrangian_cut(surface, lambda_grid[i]); });
  return out;
}

IsoPoint brute_force_min(const TriangulatedSurface& surface, double target_volume,
                         std::optional<double> volume_tolerance, int face_cap) {
  const int F = surface.face_count();
  if (F > face_cap || F > kBruteHardCap) {
    throw SizeError("brute force limited to " + std::to_string(std::min(face_cap, kBruteHardCap)) + " faces, got " +
                    std::to_string(F));
  }
  const double tol = volume_tolerance.value_or(default_volume_tolerance(surface));
  const double A = surface.total_area();
  const double total_length = [&] {
    const auto l = surface.edge_lengths();
    return std::accumulate(l.begin(), l.end(), 0.0);
  }();
  const double v_slack = 1e-9 * A;
  const double p_slack = 1e-9 * total_length;

  // Volumes from three chunk tables: no drift along the Gray code.
  const int chunk = (F + 2) / 3;
  std::array<std::vector<double>, 3> table;
  for (int c = 0; c < 3; ++c) {
    const int base = c * chunk;
    const int bits = std::max(0, std::min(chunk, F - base));
    table[c].assign(std::size_t{1} << bits, 0.0);
    for (std::uint64_t m = 1; m < table[c].size(); ++m) {
      const int low = std::countr_zero(m);
      table[c][m] = table[c][m & (m - 1)] + surface.face_area(base + low);
    }
  }
  const std::uint64_t chunk_mask = (std::uint64_t{1} << chunk) - 1;
  auto volume_of = [&](std::uint64_t m) {
    return table[0][m & chunk_mask] + table[1][(m >> chunk) & chunk_mask] + table[2][m >> (2 * chunk)];
  };
  auto perimeter_of = [&](std::uint64_t m) {
    double p = 0.0;
    for (int e = 0; e < surface.edge_count(); ++e) {
      const auto [f, g] = surface.edge_faces(e);
      if (((m >> f) & 1) != ((m >> g) & 1)) p += surface.edge_length(e);
    }
    return p;
  };

  std::vector<std::array<std::pair<int, double>, 3>> nb(F);
  for (int f = 0; f < F; ++f) {
    const auto& fe = surface.face_edges(f);
    for (int k = 0; k < 3; ++k) {
      const auto [a, b] = surface.edge_faces(fe[k]);
      nb[f][k] = {a == f ? b : a, surface.edge_length(fe[k])};
    }
  }

  std::vector<std::pair<double, std::uint64_t>> candidates;
  double best_p = std::numeric_limits<double>::infinity();
  auto consider = [&](std::uint64_t m, double p) {
    if (std::abs(volume_of(m) - target_volume) > tol + v_slack) return;
    if (p > best_p + p_slack) return;
    best_p = std::min(best_p, p);
    candidates.push_back({p, m});
    if (candidates.size() > 8192) {
      std::erase_if(candidates, [&](const auto& c) { return c.first > best_p + p_slack; });
    }
  };

  std::uint64_t mask = 0;
  double p = 0.0;
  consider(mask, p);
  const std::uint64_t total = std::uint64_t{1} << F;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int f = std::countr_zero(i);
    const bool adding = !((mask >> f) & 1);
    for (const auto& [g, l] : nb[f]) {
      const bool g_in = (mask >> g) & 1;
      // Edge is cut after the toggle iff memberships differ afterwards.
      p += (adding != g_in) ? l : -l;
    }
    mask ^= std::uint64_t{1} << f;
    if ((i & 0xFFFF) == 0) p = perimeter_of(mask);
    consider(mask, p);
  }

  std::optional<IsoPoint> best;
  for (const auto& [cp, m] : candidates) {
    if (cp > best_p + p_slack) continue;
    std::vector<FaceId> faces;
    for (int f = 0; f < F; ++f) {
      if ((m >> f) & 1) faces.push_back(f);
    }
    IsoPoint pt = make_point(surface, Region(std::move(faces)), Method::Brute, true, 0.0);
    if (!within(pt.volume, target_volume, tol)) continue;
    if (!best || better(pt, *best)) best = std::move(pt);
  }
  if (!best) throw InfeasibleError("no region within the volume window");
  return *best;
}

std::optional<IsoPoint> repair_region(const TriangulatedSurface& surface, const Region& start,
                                      double target, double tol, int budget) {
  const int F = surface.face_count();
  std::vector<char> in(F, 0);
  for (FaceId f : start.faces()) in[f] = 1;
  double v = volume(surface, start);
  const double scale = std::max(1.0, perimeter(surface, start));
  const double gain_eps = 1e-12 * scale;

  // Perimeter change of toggling f.
  auto delta = [&](FaceId f) {
    double d = 0.0;
    for (int k = 0; k < 3; ++k) {
      const EdgeId e = surface.face_edges(f)[k];
      const auto [a, b] = surface.edge_faces(e);
      const FaceId g = a == f ? b : a;
      d += (in[g] == in[f]) ? surface.edge_length(e) : -surface.edge_length(e);
    }
    return d;
  };
  auto frontier = [&](FaceId f) {
    for (int k = 0; k < 3; ++k) {
      if (in[surface.face_neighbor(f, k)] != in[f]) return true;
    }
    return false;
  };
  auto toggled_volume = [&](FaceId f) { return in[f] ? v - surface.face_area(f) : v + surface.face_area(f); };
  auto toggle = [&](FaceId f) {
    v = toggled_volume(f);
    in[f] = !in[f];
  };

  int moves = 0;
  FaceId last = -1;
  // Phase one: reach the volume window.
  while (!within(v, target, tol)) {
    if (++moves > budget) return std::nullopt;
    const bool grow = v < target;
    FaceId pick = -1;
    double pick_delta = 0.0, pick_gap = 0.0;
    bool pick_fits = false;
    const bool seed_anywhere = grow ? !std::any_of(in.begin(), in.end(), [](char c) { return c; })
                                    : !std::any_of(in.begin(), in.end(), [](char c) { return !c; });
    for (FaceId f = 0; f < F; ++f) {
      if (static_cast<bool>(in[f]) == grow || f == last) continue;
      if (!seed_anywhere && !frontier(f)) continue;
      const double nv = toggled_volume(f);
      const bool fits = grow ? nv <= target + tol : nv >= target - tol;
      const double d = delta(f);
      const double gap = std::abs(nv - target);
      bool take = false;
      if (pick < 0) take = true;
      else if (fits != pick_fits) take = fits;
      else if (fits) take = d < pick_delta - gain_eps;
      else take = gap < pick_gap;
      if (take) {
        pick = f;
        pick_delta = d;
        pick_gap = gap;
        pick_fits = fits;
      }
    }
    if (pick < 0) return std::nullopt;
    toggle(pick);
    last = pick;
  }

  // Phase two: steepest descent inside the window, single then pair moves.
  while (moves < budget) {
    ++moves;
    FaceId best_f = -1;
    double best_d = -gain_eps;
    for (FaceId f = 0; f < F; ++f) {
      if (!frontier(f) || !within(toggled_volume(f), target, tol)) continue;
      const double d = delta(f);
      if (d < best_d) {
        best_d = d;
        best_f = f;
      }
    }
    if (best_f >= 0) {
      toggle(best_f);
      continue;
    }
    FaceId pa = -1, pb = -1;
    best_d = -gain_eps;
    std::vector<FaceId> front;
    for (FaceId f = 0; f < F; ++f) {
      if (frontier(f)) front.push_back(f);
    }
    for (FaceId a : front) {
      if (in[a]) continue;  // a joins, b leaves
      const double da = delta(a);
      toggle(a);
      for (FaceId b : front) {
        if (!in[b] || b == a) continue;
        if (!within(toggled_volume(b), target, tol)) continue;
        const double d = da + delta(b);
        if (d < best_d) {
          best_d = d;
          pa = a;
          pb = b;
        }
      }
      toggle(a);
    }
    if (pa < 0) break;
    toggle(pa);
    toggle(pb);
  }
  IsoPoint p = make_point(surface, to_region(in), Method::Repaired, false, 0.0);
  if (!within(p.volume, target, tol)) return std::nullopt;
  return p;
}

IsoPoint constrained_min_at_volume(const TriangulatedSurface& surface, double target,
                                   const SolverSettings& settings) {
  const double A = surface.total_area();
  const double tol = settings.volume_tolerance.value_or(default_volume_tolerance(surface));
  if (!(tol >= 0.0)) throw InputError("volume tolerance must be non-negative");
  if (!std::isfinite(target) || target < -tol || target > A + tol) {
    throw InfeasibleError("target volume outside [0, total area]");
  }
  const int F = surface.face_count();
  if (within(0.0, target, tol)) return make_point(surface, Region{}, Method::Mincut, true, 0.0);
  if (within(A, target, tol)) return make_point(surface, full_region(surface), Method::Mincut, true, 0.0);

  Candidates cands;
  const std::vector<signed char> free_state(F, kFree);
  // Plain sweep: global Lagrangian minimisers are optimal at their volume.
  bisect_and_offer(surface, free_state, target, tol, settings, true, cands);

  if (settings.seeded && !(cands.best && cands.best->certified_optimal)) {
    std::vector<std::vector<double>> dist;
    const auto seeds = farthest_seeds(surface, settings.seed_count, dist);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      for (std::size_t j = 0; j < seeds.size(); ++j) {
        if (i == j) continue;
        const double d_ab = dist[i][seeds[j]];
        for (double theta : {0.0, 0.25, 0.4}) {
          std::vector<signed char> state(F, kFree);
          bool clash = false;
          for (int f = 0; f < F; ++f) {
            const bool a = dist[i][f] <= theta * d_ab;
            const bool b = dist[j][f] <= theta * d_ab;
            if (a && b) clash = true;
            if (a) state[f] = kIn;
            else if (b) state[f] = kOut;
          }
          state[seeds[i]] = kIn;
          state[seeds[j]] = kOut;
          if (clash) continue;
          bisect_and_offer(surface, state, target, tol, settings, false, cands);
        }
      }
    }
  }

  // Narrow windows can defeat the seeded cuts and the repair; an exact
  // search then either finds a region or proves there is none.
  if (!cands.best && F <= std::min(settings.brute_face_cap, kBruteHardCap)) {
    cands.best = brute_force_min(surface, target, tol, settings.brute_face_cap);
    if (settings.cross_validate) return *cands.best;
  }
  if (!cands.best || (settings.exact && !cands.best->certified_optimal)) {
    ExactSearch search = branch_and_bound(surface, target, tol, settings.exact_node_budget, cands.best);
    if (search.best) {
      if (search.complete) search.best->certified_optimal = true;
      cands.best = search.best;
    }
  }

  if (settings.cross_validate && F <= settings.brute_face_cap) {
    IsoPoint brute = brute_force_min(surface, target, tol, settings.brute_face_cap);
    if (!cands.best || brute.region != cands.best->region) return brute;
    cands.best->certified_optimal = true;
  }
  if (!cands.best) throw InfeasibleError("no region found within the volume window");
  return *cands.best;
}

BoundsReport bounds_report(const TriangulatedSurface& surface, const Region& region,
                           const Region& cylinder, double C) {
  BoundsReport r;
  const auto comps = boundary_components(surface, region);
  r.components = static_cast<int>(comps.size());
  if (!comps.empty()) {
    r.delta = std::numeric_limits<double>::infinity();
    for (const auto& c : comps) {
      r.delta = std::min(r.delta, c.length);
      r.diameter = std::max(r.diameter, c.diameter);
    }
  }
  r.outside_volume = volume(surface, complement(surface, cylinder));
  r.complement_bound = r.outside_volume + C * r.components;
  r.min_side_volume = std::min(volume(surface, region), volume(surface, complement(surface, region)));
  r.exceeds_bound = r.min_side_volume > r.complement_bound;
  return r;
}

std::vector<IsoPoint> isoperimetric_profile(const TriangulatedSurface& surface, int samples,
                                            const SolverSettings& settings) {
  if (samples < 2) throw InputError("profile needs at least two samples");
  const double half = 0.5 * surface.total_area();
  std::vector<IsoPoint> points(samples);
  parallel_for(points.size(), [&](std::size_t k) {
    const double target = half * static_cast<double>(k) / static_cast<double>(samples - 1);
    points[k] = constrained_min_at_volume(surface, target, settings);
  });
  std::vector<IsoPoint> out = points;
  for (const auto& p : points) {
    IsoPoint mirror = p;
    mirror.region = complement(surface, p.region);
    mirror.volume = volume(surface, mirror.region);
    mirror.perimeter = perimeter(surface, mirror.region);
    mirror.lambda = -p.lambda;
    if (mirror.region != p.region) out.push_back(std::move(mirror));
  }
  std::sort(out.begin(), out.end(), [](const IsoPoint& a, const IsoPoint& b) {
    if (a.volume != b.volume) return a.volume < b.volume;
    return canonical_less(a.region, b.region);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const IsoPoint& a, const IsoPoint& b) { return a.region == b.region; }),
            out.end());
  return out;
}

}  // namespace stretchlab
