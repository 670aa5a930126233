#ifndef SDX_BRUTE_FORCE_H_
#define SDX_BRUTE_FORCE_H_

#include <cstdint>

#include "sdx/solver.h"

namespace sdx {

// Exhaustive search straight on the planarization's cells and segments; no
// holes, no crossable labels, no patchwork.
bool BruteForceWithinGuards(const InsertionInstance& inst);
// Throws GuardTripped outside the guards (crossings <= 12, k <= 3, budgets <= 3).
SolveResult BruteForceSolve(const InsertionInstance& inst, Variant variant, int64_t max_nodes = 20000000);

}  // namespace sdx

#endif  // SDX_BRUTE_FORCE_H_
