#ifndef SDX_GEOMETRY_H_
#define SDX_GEOMETRY_H_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "sdx/drawing.h"

namespace sdx {

using Point = std::array<int64_t, 2>;

struct StraightLineInput {
  std::vector<Point> points;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> added;
  std::vector<int> budgets;
  Variant variant = Variant::kSLCEI;
};

// Exact predicates on integer points.
int Orientation(const Point& a, const Point& b, const Point& c);  // -1/0/1
// True iff the open segments ab and cd cross in a single interior point.
bool ProperlyCross(const Point& a, const Point& b, const Point& c,
                   const Point& d);

// Planarizes the straight-line drawing (real vertex ids = point indices,
// crossing vertices numbered after them) and validates it. Degenerate
// configurations and disconnected drawings raise InputError.
InsertionInstance IngestStraightLine(const StraightLineInput& in);

struct GeneratedInstance {
  StraightLineInput input;
  InsertionInstance instance;
  uint64_t seed = 0;
  int64_t grid = 0;   // final grid size per axis
  int attempts = 0;   // point-set and edge-set samples drawn
};

// Deterministic in all arguments. Throws std::runtime_error when the
// resample budget runs out.
GeneratedInstance RandomInstance(int n, int m, int k, int ell, uint64_t seed,
                                 Variant variant = Variant::kSLCEI);

}  // namespace sdx

#endif  // SDX_GEOMETRY_H_
