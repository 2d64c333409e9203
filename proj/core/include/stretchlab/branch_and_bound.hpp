#pragma once

#include <optional>

#include "stretchlab/solver.hpp"
#include "stretchlab/surface.hpp"

namespace stretchlab {

struct ExactSearch {
  std::optional<IsoPoint> best;  // incumbent, with method Exact when the search found it
  bool complete = false;         // the whole tree was explored: `best` is optimal
  long nodes = 0;
};

/// Depth-first branch and bound over face memberships. Each node is
/// bounded by the Lagrangian dual of the window constraint
/// target - tol <= Vol <= target + tol with its fixed faces enforced by
/// the cut; feasible cuts met on the way become incumbents.
ExactSearch branch_and_bound(const TriangulatedSurface& surface, double target_volume,
                             double tolerance, long node_budget,
                             std::optional<IsoPoint> incumbent = std::nullopt);

}  // namespace stretchlab
