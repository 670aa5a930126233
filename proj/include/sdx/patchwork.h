#ifndef SDX_PATCHWORK_H_
#define SDX_PATCHWORK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdx/crossable.h"
#include "sdx/embedded_graph.h"

namespace sdx {

struct PVertex {
  enum Role { kReal, kCrossing, kSegment, kCell, kShadow };
  Role role = kReal;
  int ref = -1;       // real/crossing: drawing vertex (-1 for stitch crossings); segment: drawing segment (-1 on stitches); cell/shadow: face
  int edge = -1;      // segment: original edge
  int slot = -1;      // segment: position along the canonical dart; stitch: 2j or 2j+1 on the j-th stitch edge from a
  int anchor = -1;    // shadow: anchoring P vertex
  int corner = -1;    // shadow: walk dart it belongs to
  uint32_t endpoint_mask = 0;  // real: added edges ending here
  uint32_t crossable = 0;      // segment: crossableFor
  int tracking = 0;            // segment: 0 none, 1 or 2
  int hole = -1, thread = -1;  // stitch origin
  int stitch_crossing = -1;    // crossing: id inside the hole's stitch plan
};

struct Patchwork {
  int k = 0;
  int subdiv = 2;
  std::vector<PVertex> v;
  EmbeddedGraph g;
  std::vector<int> of_drawing_vertex;              // drawing vertex -> P vertex or -1
  std::vector<std::vector<int>> of_segment;        // segment -> P vertices by slot, empty if removed
  std::vector<int> of_face;                        // face -> cell vertex or -1
  std::vector<std::vector<int>> shadows_of_face;   // face -> shadows in boundary-walk order
  std::vector<int> corner_shadow;                  // walk dart -> shadow at its tail corner or -1
  std::vector<std::vector<int>> seg_shadow;        // segment -> [slot*2 + (0 right of canonical, 1 left)]

  int NumVertices() const { return static_cast<int>(v.size()); }
  // shadow of segment vertex `slot` of segment s on face f, or -1
  int SegmentShadow(int s, int slot, bool left) const { return seg_shadow[s][slot * 2 + left]; }
};

Patchwork BuildPatchwork(const InsertionInstance& inst, const HoleDecomposition& hd,
                         const StitchPlan& stitches, const std::vector<CrossableResult>& crossable);
void AssignCrossableLabels(Patchwork& p, const InsertionInstance& inst, const HoleDecomposition& hd,
                           const std::vector<CrossableResult>& crossable);
void AssignTrackingLabels(Patchwork& p, const InsertionInstance& inst, const StitchPlan& stitches);

// All three stages plus the holes and stitches they need.
struct Pipeline {
  DualGraph dual;
  HoleDecomposition holes;
  std::vector<CrossableResult> crossable;
  StitchPlan stitches;
  Patchwork patchwork;
};
Pipeline RunPipeline(const InsertionInstance& inst);

// Path of segment/crossing vertices where every crossing vertex is passed
// between two neighbours carrying the same tracking label.
bool SameEdgeReachable(const Patchwork& p, int v1, int v2, int i);

struct TrackingCheck {
  int crossing_vertices = 0;
  int exact_pairs = 0;         // 2 + 2 with same-edge pairs
  std::vector<std::string> failures;
};
TrackingCheck CheckTracking(const Patchwork& p, const InsertionInstance& inst,
                            const StitchPlan& stitches);

// Euler per component, P+ diameter and its bound; throws FatalDiagnostic
// when the bound is exceeded.
nlohmann::json Diagnostics(const Patchwork& p, const InsertionInstance& inst, const Pipeline& pl);

nlohmann::json PatchworkToJson(const Patchwork& p);
std::string PatchworkToDot(const Patchwork& p);
std::string PatchworkToGraphml(const Patchwork& p);
const char* RoleName(PVertex::Role r);

}  // namespace sdx

#endif  // SDX_PATCHWORK_H_
