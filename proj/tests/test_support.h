#ifndef SDX_TESTS_TEST_SUPPORT_H_
#define SDX_TESTS_TEST_SUPPORT_H_

#include "sdx/geometry.h"

namespace sdx::testing {

inline CombinatorialMap TriangleMap() {
  CombinatorialMap m;
  m.num_darts = 6;
  m.twin = {1, 0, 3, 2, 5, 4};
  m.vertex_of = {0, 1, 1, 2, 2, 0};
  m.rot = {5, 2, 1, 4, 3, 0};
  return m;
}

inline StraightLineInput ConvexK4() {
  StraightLineInput in;
  in.points = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  in.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}};
  return in;
}

// 4-cycle ABCD plus AC; BD is to be added.
inline StraightLineInput SquareWithDiagonal(int ell) {
  StraightLineInput in;
  in.points = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  in.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};
  in.added = {{1, 3}};
  in.budgets = {ell};
  return in;
}

}  // namespace sdx::testing

#endif  // SDX_TESTS_TEST_SUPPORT_H_
