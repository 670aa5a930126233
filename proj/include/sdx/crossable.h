#ifndef SDX_CROSSABLE_H_
#define SDX_CROSSABLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sdx/dual_holes.h"

namespace sdx {

// ---- combined primal-dual graph ----

struct GpdGraph {
  enum Kind { kOriginal, kEdge, kFace };
  std::vector<Kind> kind;
  std::vector<int> ref;  // drawing vertex / segment / face (holes: -1 - hole)
  std::vector<std::vector<int>> adj;
  int NumVertices() const { return static_cast<int>(kind.size()); }
  int Diameter() const;  // max eccentricity inside each component
};

GpdGraph BuildGpd(const InsertionInstance& inst, const HoleDecomposition& hd);
std::string GpdToDot(const GpdGraph& g, const Drawing& d);

// ---- solution-curve walks ----

// faces[0..m], darts[0..m-1]; darts[j] is crossed from faces[j] into
// faces[j+1] (so face(darts[j]) = faces[j]).
struct CurveWalk {
  std::vector<int> faces;
  std::vector<int> darts;
};

// Filter (a): chords of passages through one cell (enter -> leave) must not
// interleave, neither must the chords of excursions (leave -> re-enter).
bool WalkRealizable(const Drawing& d, const CurveWalk& w);
// Filter (b): every return to an already visited cell must enclose an
// endpoint of another added edge on the side away from the outer cell.
bool WalkRevisitsJustified(const InsertionInstance& inst, const CurveWalk& w, int i);

struct CrossableResult {
  int edge_index = -1;
  std::vector<char> segment_crossed;                        // by an accepted walk
  std::vector<std::vector<std::vector<char>>> part_crossable;  // [hole][edge][part]
  int64_t walks_accepted = 0;
  int64_t nodes = 0;
  int CountParts() const;  // crossable parts of torn edges, summed over holes
  bool operator==(const CrossableResult& o) const {
    return segment_crossed == o.segment_crossed && part_crossable == o.part_crossable;
  }
};

// DFS with both filters applied incrementally and distance pruning.
CrossableResult CrossableParts(const InsertionInstance& inst, const DualGraph& g,
                               const HoleDecomposition& hd, int i);
// Unpruned enumeration of every walk within budget, filtered afterwards.
CrossableResult CrossablePartsOracle(const InsertionInstance& inst, const DualGraph& g,
                                     const HoleDecomposition& hd, int i);

using BigInt = boost::multiprecision::cpp_int;
// l (2l+1)! (4k(l+2)(l+1)^(l+1))^(2l+1)
BigInt CrossableBound(int k, int ell);
// count < bound, where a zero count always passes
bool CheckBound(int count, int k, int ell);

// ---- threads and stitches ----

struct ThreadEnd {
  int vertex = -1;  // crossing vertex on the hole boundary
  int dart = -1;    // dart of the torn edge leaving it into the hole
  int piece = -1;
  int major = 0, minor = 0;  // position along the piece
  int rank = -1;             // dense rank among endpoints on the piece
  bool operator==(const ThreadEnd& o) const { return vertex == o.vertex && dart == o.dart; }
};

struct Thread {
  int edge = -1;
  int part_a = -1, part_b = -1;  // indices into parts[h][edge], traversal order
  ThreadEnd a, b;
  uint32_t for_mask = 0;  // added edges it was built for
  bool embedded = false;  // both ends on one boundary piece
  std::vector<int> crossings;  // stitch crossing ids, ordered from a to b
};

struct StitchCrossing {
  int t1 = -1, t2 = -1;  // t1 < t2
  std::vector<int> rot_threads;  // ccw: (thread, towards_b) encoded 2t+towards_b
};

struct BoundaryPiece {
  std::vector<int> darts;  // reduced orbit with the hole on the right
};

struct HoleStitches {
  std::vector<BoundaryPiece> pieces;
  std::vector<int> piece_of_dart;  // drawing dart -> piece or -1
  std::vector<Thread> threads;
  std::vector<StitchCrossing> crossings;
  std::vector<int> observation_violations;  // threads with ends on two pieces
  bool orientation_invariant = true;        // pair set same for reversed traversal
  bool euler_ok = true;                     // per-piece chord diagram
  std::vector<int> endpoints_per_piece;
};

struct StitchPlan {
  std::vector<HoleStitches> holes;
  int NumThreads() const;
  int MaxThreadsPerHole() const;
};

StitchPlan BuildStitches(const InsertionInstance& inst, const HoleDecomposition& hd,
                         const std::vector<CrossableResult>& crossable);

// Threads of one hole for one added edge, traversing every torn edge in the
// stored direction (or reversed). Pairs of (end of part, start of part).
std::vector<std::pair<int, int>> ThreadPairs(const Drawing& d, const HoleDecomposition& hd,
                                             const CrossableResult& cr, int h, int edge,
                                             bool reversed);

}  // namespace sdx

#endif  // SDX_CROSSABLE_H_
