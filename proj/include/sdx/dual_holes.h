#ifndef SDX_DUAL_HOLES_H_
#define SDX_DUAL_HOLES_H_

#include <vector>

#include "json.hpp"
#include "sdx/drawing.h"

namespace sdx {

struct DualLink {
  int a, b;     // face(segment_dart), face(twin)
  int segment;
};

struct DualGraph {
  int num_cells = 0;
  std::vector<DualLink> links;                      // one per segment
  std::vector<std::vector<std::pair<int, int>>> adj;  // cell -> (cell, segment)
  std::vector<std::vector<int>> U;                  // vertex -> incident cells, sorted
};

DualGraph BuildDual(const Drawing& d);

// Multi-source BFS; unreachable cells get a huge value.
std::vector<int> DualDistances(const DualGraph& g, const std::vector<int>& sources);

// far[c] for added edge i, using the budget that applies under the variant.
std::vector<char> FarCells(const InsertionInstance& inst, const DualGraph& g, int i);

// Maximal run of segments of one edge that survive the removal of a hole
// interior. Indices into edge_seq, inclusive.
struct EdgePart {
  int edge = -1;
  int first = 0, last = 0;
  bool start_at_hole = false;  // segment first-1 is inside the hole
  bool end_at_hole = false;    // segment last+1 is inside the hole
  bool operator==(const EdgePart&) const = default;
};

struct Hole {
  std::vector<int> cells;           // sorted
  std::vector<int> boundary_darts;  // d with face(d) in H, face(twin d) not in H
};

struct HoleDecomposition {
  std::vector<std::vector<char>> far;  // [i][cell]
  std::vector<int> hole_of;            // cell -> hole or -1
  std::vector<Hole> holes;
  std::vector<std::vector<char>> inside;                    // [hole][segment]
  std::vector<std::vector<std::vector<EdgePart>>> parts;    // [hole][edge]

  int NumHoles() const { return static_cast<int>(holes.size()); }
  bool Torn(int h, int e) const { return parts[h][e].size() >= 2; }
  bool Swallowed(int h, int e) const { return parts[h][e].empty(); }
  // Part of `edge` in hole h containing segment index j, or -1 when inside.
  int PartIndex(int h, int edge, int j) const;
};

HoleDecomposition ComputeHoles(const InsertionInstance& inst, const DualGraph& g);

nlohmann::json HolesReport(const InsertionInstance& inst, const HoleDecomposition& hd);

}  // namespace sdx

#endif  // SDX_DUAL_HOLES_H_
