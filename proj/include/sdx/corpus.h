#ifndef SDX_CORPUS_H_
#define SDX_CORPUS_H_

#include <string>
#include <vector>

#include "sdx/geometry.h"

namespace sdx {

// L concentric axis-parallel squares (half-size 3r, r = 1..L, centered at the
// origin), consecutive SW corners joined by spokes. Corner c of layer r has id
// 4(r-1)+c with c = 0 SW, 1 SE, 2 NE, 3 NW. With `chord`, a near-horizontal
// edge P-Q crosses every layer (P = 4L, Q = 4L+1, each tied to the outer
// layer). With `diag`, the innermost square gets its SW-NE diagonal.
StraightLineInput NestedSquares(int layers, bool chord, bool diag);

struct NamedInstance {
  std::string name;
  StraightLineInput input;
};

// Hand-built configurations: cut vertices, holes with several boundary
// pieces, swallowed and torn edges. Deterministic, always 50 entries.
std::vector<NamedInstance> AdversarialInstances();

// Fixed seed lists. C1: 300 single-edge instances, n in 4..8, m <= 12,
// budgets 0..4. C2: 150 instances with k in 1..3, budgets <= 3 and at most
// 10 drawing crossings.
std::vector<GeneratedInstance> SingleEdgeCorpus();
std::vector<GeneratedInstance> MultiEdgeCorpus();

}  // namespace sdx

#endif  // SDX_CORPUS_H_
