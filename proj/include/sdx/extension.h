#ifndef SDX_EXTENSION_H_
#define SDX_EXTENSION_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "sdx/drawing.h"

namespace sdx {

// One inserted edge as a route through the planarization. Corners are named
// by the boundary-walk dart leaving the endpoint (the corner lies just
// before that dart in its cell).
struct CurveTrace {
  int start = -1;            // dart with tail s_i, face = cells.front()
  int end = -1;              // dart with tail t_i, face = cells.back()
  std::vector<int> cells;    // m+1 cells
  std::vector<int> darts;    // m crossed darts, face(darts[j]) = cells[j]
  std::vector<int> ranks;    // position of each crossing along its segment's canonical dart
  bool operator==(const CurveTrace&) const = default;
};

// Crossing between inserted edges a < b inside cells[pass] of both curves.
struct NewCrossing {
  int a = -1, b = -1;
  int cell = -1;
  int pass_a = -1, pass_b = -1;
  auto operator<=>(const NewCrossing&) const = default;
};

struct Extension {
  std::vector<CurveTrace> curves;  // indexed like InsertionInstance::added
  std::vector<NewCrossing> declared;
  bool operator==(const Extension&) const = default;
};

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> reasons;
  std::vector<int> existing;  // per curve: crossings with drawing edges
  std::vector<int> mutual;    // per curve: crossings with other inserted edges
  int crossing_points = 0;    // existing crossings + new-new crossing points
};

// Crossings a chord arrangement forces: one per interleaving pair of
// passages in a common cell. Interleaving passages of one curve are
// reported through self_problems.
std::vector<NewCrossing> InterleavingCrossings(const Extension& ext, const Drawing& d,
                                               std::vector<std::string>* self_problems);

VerifyResult Verify(const Extension& ext, const InsertionInstance& inst, Variant variant);

// Per curve, the crossings in order from s_i to t_i: {"edge","segment"} for
// drawing edges, {"added"} for inserted ones.
nlohmann::json CrossingSequences(const Extension& ext, const Drawing& d);

nlohmann::json ExtensionToJson(const Extension& ext, const InsertionInstance& inst);
// Throws InputError with a JSON-pointer-ish location on malformed input.
Extension ExtensionFromJson(const nlohmann::json& j, const InsertionInstance& inst);

}  // namespace sdx

#endif  // SDX_EXTENSION_H_
