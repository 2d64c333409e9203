#pragma once

#include <vector>

#include "stretchlab/maxflow.hpp"
#include "stretchlab/solver.hpp"

namespace stretchlab::detail {

// Face states for constrained cuts.
enum : signed char { kFree = -1, kOut = 0, kIn = 1 };

struct CutResult {
  std::vector<char> in;  // per face
  double volume = 0.0;
  double perimeter = 0.0;
};

// Network for Per - lambda Vol, already solved; s = F, t = F + 1.
MaxFlow solved_network(const TriangulatedSurface& surface, double lambda,
                       const std::vector<signed char>& state);

// Smallest minimiser of Per - lambda Vol with the given face states.
CutResult constrained_cut(const TriangulatedSurface& surface, double lambda,
                          const std::vector<signed char>& state);

// lambda large enough that every free face joins (or, negated, leaves) E.
double lambda_bound(const TriangulatedSurface& surface);

Region to_region(const std::vector<char>& in);

IsoPoint make_point(const TriangulatedSurface& surface, Region region, Method method,
                    bool certified, double lambda);

// Strictly better: smaller perimeter, ties broken canonically.
bool better(const IsoPoint& a, const IsoPoint& b);

}  // namespace stretchlab::detail
