#ifndef SDX_DRAWING_H_
#define SDX_DRAWING_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdx/combinatorial_map.h"

namespace sdx {

enum class Role { kReal, kCrossing };

// A validated simple drawing, held as the planarization's map plus the
// segment -> original edge identity. Segment ids are dense; segment s is
// traversed by segment_dart[s] in the stored edge orientation (from the
// smaller endpoint id to the larger one).
struct Drawing {
  CombinatorialMap map;
  FaceSet faces;
  std::vector<Role> role;                  // vertex -> role
  std::vector<int> edge_of;                // dart -> original edge
  int num_edges = 0;
  std::vector<std::pair<int, int>> endpoints;  // edge -> (a, b), a < b
  std::vector<std::vector<int>> edge_seq;      // edge -> darts a..b
  std::vector<int> seg_of;                 // dart -> segment id
  std::vector<int> seg_index;              // dart -> position in edge_seq
  std::vector<int> segment_dart;           // segment -> canonical dart
  std::vector<std::vector<int>> darts_at;  // vertex -> darts in rot order
  std::vector<int> edge_crossings;         // edge -> crossings in the drawing

  int NumVertices() const { return static_cast<int>(role.size()); }
  int NumSegments() const { return static_cast<int>(segment_dart.size()); }
  int NumCrossings() const;
  bool IsCanonical(int d) const { return segment_dart[seg_of[d]] == d; }
  int Head(int d) const { return map.vertex_of[map.twin[d]]; }
  int Tail(int d) const { return map.vertex_of[d]; }
  bool Incident(int edge, int v) const {
    return endpoints[edge].first == v || endpoints[edge].second == v;
  }
  // Original edge between two real vertices, or -1.
  int EdgeBetween(int u, int v) const;
};

struct ValidationIssue {
  std::string code;     // stable short identifier, e.g. "crossing-degree"
  std::string message;  // human readable, names a witness
};

struct ValidationResult {
  std::optional<Drawing> drawing;
  std::vector<ValidationIssue> issues;
  bool ok() const { return drawing.has_value(); }
};

// Checks every invariant; on failure lists all violations found.
ValidationResult ValidateDrawing(const CombinatorialMap& map,
                                 const std::vector<Role>& role,
                                 const std::vector<int>& edge_of);

enum class Variant { kSLCEI, kSCEI, kSLPEI, kLPEI, kLCEI };

std::string VariantName(Variant v);
std::optional<Variant> ParseVariant(const std::string& s);
bool IsSimpleVariant(Variant v);

struct InsertionInstance {
  Drawing drawing;
  std::vector<std::pair<int, int>> added;  // (s_i, t_i)
  std::vector<int> budgets;
  Variant variant = Variant::kSLCEI;

  int k() const { return static_cast<int>(added.size()); }
  // Per-edge budgets apply under the local variants; the global ones use a
  // single bound, taken as the largest listed budget.
  int GlobalBudget() const;
  int EffectiveBudget(int i) const;
  int MaxEffectiveBudget() const;
  bool IsEndpoint(int v) const;
};

// Throws InputError when the added edges or budgets break the invariants.
void CheckInstance(const InsertionInstance& inst);

}  // namespace sdx

#endif  // SDX_DRAWING_H_
