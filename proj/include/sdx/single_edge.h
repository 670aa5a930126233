#ifndef SDX_SINGLE_EDGE_H_
#define SDX_SINGLE_EDGE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "sdx/solver.h"

namespace sdx {

using ColorSet = std::vector<int>;  // sorted, no repeats
using Family = std::vector<ColorSet>;

bool Fit(const ColorSet& a, const ColorSet& b, int rank);
Family Convolve(const Family& a, const Family& b);

struct RepFamilyParams {
  int p = 0, q = 0;
  double x = 0;  // p / (p + 2q)
};
RepFamilyParams MakeRepParams(int p, int q);

enum class RepEngine { kAuto, kExact, kPruned };
const char* EngineName(RepEngine e);

struct RepStats {
  int64_t calls = 0;
  int64_t pruned_calls = 0;      // separating family actually evaluated
  int64_t fallback_calls = 0;    // family too expensive to evaluate, kept whole
  int64_t small_calls = 0;       // already within the size guarantee
  int64_t sets_in = 0, sets_out = 0;
};

// Subfamily that q-represents `f` in the uniform matroid of rank p+q over
// `universe` colours. kAuto keeps everything for small universes or families.
Family RepFamily(const Family& f, int p, int q, int universe, RepEngine engine, RepStats* stats = nullptr);

// Exhaustive check over every q-subset B of the universe.
bool QRepresents(const Family& whole, const Family& part, int p, int q, int universe);

struct ColorfulPathInstance {
  enum Kind { kCell, kSegment, kMarker };
  std::vector<Kind> kind;
  std::vector<int> ref;       // face, segment, or drawing vertex
  std::vector<std::vector<int>> adj;
  std::vector<int> color;
  int universe = 0;
  int s = -1, t = -1;
  int kappa = 0;  // bound on the number of edges of the path
  int NumVertices() const { return static_cast<int>(kind.size()); }
};

// Dual of the planarization, every link subdivided by its segment, markers for
// s and t. Segments of edges incident to s (t) take the colour of s (t), so a
// colourful path never crosses an edge sharing an endpoint with the new edge.
ColorfulPathInstance ReduceToColorful(const InsertionInstance& inst, int ell);

bool IsColorfulPath(const ColorfulPathInstance& cpi, const std::vector<int>& path);

struct DpStats {
  RepStats rep;
  int64_t max_family = 0;
  int64_t merged = 0;  // sets dropped as equal on every colour still reachable
  int rounds = 0;
};
// max_sets > 0 bounds the colour sets held over all rounds; GuardTripped beyond it.
std::optional<std::vector<int>> ColorfulShortPath(const ColorfulPathInstance& cpi, RepEngine engine,
                                                  DpStats* stats = nullptr, int64_t max_sets = 0);
// Shortest colourful s-t path of at most kappa edges, by exhaustive DFS.
// Throws GuardTripped on more than 400 vertices or kappa above 13.
std::optional<std::vector<int>> BruteForceColorful(const ColorfulPathInstance& cpi);

Extension PathToExtension(const ColorfulPathInstance& cpi, const InsertionInstance& inst,
                          const std::vector<int>& path);

struct SingleResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<Extension> solution;
  int crossings = -1;
  nlohmann::json stats = nlohmann::json::object();
};
// k = 1 only (InputError otherwise). Tries l' = 0..l ascending.
SingleResult SolveSingle(const InsertionInstance& inst, RepEngine engine = RepEngine::kAuto,
                         bool oracle_check = false);

}  // namespace sdx

#endif  // SDX_SINGLE_EDGE_H_
