#include "stretchlab/branch_and_bound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <limits>

#include "solver_internal.hpp"
#include "stretchlab/errors.hpp"

namespace stretchlab {

using namespace detail;

namespace {

class Search {
 public:
  Search(const TriangulatedSurface& surface, double target, double tol, long budget,
         std::optional<IsoPoint> incumbent)
      : s_(surface),
        lo_(target - tol),
        hi_(target + tol),
        budget_(budget),
        Lambda_(lambda_bound(surface)),
        state_(surface.face_count(), kFree) {
    if (incumbent) {
      result_.best = std::move(incumbent);
    }
  }

  ExactSearch run() {
    if (!result_.best) seed_incumbent();
    dfs();
    result_.complete = !aborted_;
    return std::move(result_);
  }

 private:
  double cutoff() const {
    if (!result_.best) return std::numeric_limits<double>::infinity();
    const double p = result_.best->perimeter;
    return p - 1e-12 * (1.0 + p);
  }

  bool feasible(double v) const { return v >= lo_ && v <= hi_; }

  void offer(const CutResult& c) {
    if (!feasible(c.volume)) return;
    if (result_.best && c.perimeter >= result_.best->perimeter) return;
    IsoPoint p = make_point(s_, to_region(c.in), Method::Exact, false, 0.0);
    if (!feasible(p.volume)) return;
    if (!result_.best || better(p, *result_.best)) result_.best = std::move(p);
  }

  // Any region in the volume window, by a subset-sum search over the face
  // areas (largest first). No cuts are solved, so nodes are cheap.
  void seed_incumbent() {
    const int F = s_.face_count();
    std::vector<int> order(F);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return s_.face_area(a) > s_.face_area(b); });
    std::vector<double> suffix(F + 1, 0.0);
    for (int i = F; i-- > 0;) suffix[i] = suffix[i + 1] + s_.face_area(order[i]);
    std::vector<char> in(F, 0);
    long nodes = 0;
    const std::function<bool(int, double)> go = [&](int i, double v) -> bool {
      if (++nodes > budget_) return false;
      if (v > hi_ || v + suffix[i] < lo_) return false;
      if (feasible(v)) return true;
      if (i == F) return false;
      in[order[i]] = 1;
      if (go(i + 1, v + s_.face_area(order[i]))) return true;
      in[order[i]] = 0;
      return go(i + 1, v);
    };
    if (!go(0, 0.0)) return;
    IsoPoint p = make_point(s_, to_region(in), Method::Exact, false, 0.0);
    if (feasible(p.volume)) result_.best = std::move(p);
  }

  // Lagrangian dual bound for the current node. Returns +inf when the
  // node can be discarded; `relaxed` receives the last cut for branching.
  double bound(std::vector<char>& relaxed) {
    const int F = s_.face_count();
    double v_in = 0.0, v_free = 0.0;
    for (int f = 0; f < F; ++f) {
      if (state_[f] == kIn) v_in += s_.face_area(f);
      else if (state_[f] == kFree) v_free += s_.face_area(f);
    }
    const double inf = std::numeric_limits<double>::infinity();
    if (v_in > hi_ || v_in + v_free < lo_) return inf;

    CutResult c0 = constrained_cut(s_, 0.0, state_);
    offer(c0);
    relaxed = c0.in;
    double best = c0.perimeter;
    if (feasible(c0.volume) || best >= cutoff()) return best;

    // Secant iteration on the piecewise-linear concave dual.
    const bool grow = c0.volume < lo_;
    const double edge = grow ? lo_ : hi_;
    double la = 0.0, lb = grow ? Lambda_ : -Lambda_;
    CutResult a = std::move(c0);
    CutResult b = constrained_cut(s_, lb, state_);
    offer(b);
    best = std::max(best, b.perimeter - lb * b.volume + lb * edge);
    for (int it = 0; it < 64 && best < cutoff(); ++it) {
      if (b.volume == a.volume) break;
      const double lam = (b.perimeter - a.perimeter) / (b.volume - a.volume);
      if (!(grow ? (lam > la && lam < lb) : (lam < la && lam > lb))) break;
      CutResult c = constrained_cut(s_, lam, state_);
      offer(c);
      const double m = c.perimeter - lam * c.volume;
      best = std::max(best, m + lam * edge);
      relaxed = c.in;
      const double line = a.perimeter - lam * a.volume;
      if (m >= line - 1e-12 * (1.0 + std::abs(line))) break;
      const bool a_side = grow ? c.volume < lo_ : c.volume > hi_;
      if (a_side) {
        la = lam;
        a = std::move(c);
      } else {
        lb = lam;
        b = std::move(c);
      }
    }
    return best;
  }

  void dfs() {
    if (aborted_) return;
    if (++result_.nodes > budget_) {
      aborted_ = true;
      return;
    }
    std::vector<char> relaxed;
    const double b = bound(relaxed);
    if (!(b < cutoff())) return;

    const int F = s_.face_count();
    int pick = -1;
    for (int f = 0; f < F && pick < 0; ++f) {
      if (state_[f] != kFree) continue;
      for (int k = 0; k < 3; ++k) {
        if (state_[s_.face_neighbor(f, k)] != kFree) {
          pick = f;
          break;
        }
      }
    }
    if (pick < 0) {
      for (int f = 0; f < F; ++f) {
        if (state_[f] == kFree) {
          pick = f;
          break;
        }
      }
    }
    if (pick < 0) return;  // fully decided: the cut above was the region itself
    const signed char first = relaxed[pick] ? kIn : kOut;
    for (signed char value : {first, static_cast<signed char>(kIn + kOut - first)}) {
      state_[pick] = value;
      dfs();
      state_[pick] = kFree;
      if (aborted_) return;
    }
  }

  const TriangulatedSurface& s_;
  double lo_, hi_;
  long budget_;
  double Lambda_;
  std::vector<signed char> state_;
  ExactSearch result_;
  bool aborted_ = false;
};

}  // namespace

ExactSearch branch_and_bound(const TriangulatedSurface& surface, double target_volume,
                             double tolerance, long node_budget, std::optional<IsoPoint> incumbent) {
  if (!(tolerance >= 0.0)) throw InputError("volume tolerance must be non-negative");
  if (node_budget <= 0) throw InputError("node budget must be positive");
  Search search(surface, target_volume, tolerance, node_budget, std::move(incumbent));
  return search.run();
}

}  // namespace stretchlab
