#ifndef SDX_COMBINATORIAL_MAP_H_
#define SDX_COMBINATORIAL_MAP_H_

#include <string>
#include <vector>

namespace sdx {

// Plane embedding as darts. twin pairs the two sides of an edge, rot is the
// counterclockwise successor around the tail vertex. Faces are orbits of
// d -> rot(twin(d)); with that convention the face of d lies to its right.
struct CombinatorialMap {
  int num_darts = 0;
  std::vector<int> twin;
  std::vector<int> rot;
  std::vector<int> vertex_of;
  int outer_face_dart = 0;

  int NumVertices() const;  // 1 + max vertex id, 0 when empty
  int FaceNext(int d) const { return rot[twin[d]]; }
  bool operator==(const CombinatorialMap& o) const = default;
};

// Face orbits, numbered by their smallest dart. walks[f] starts at that
// smallest dart and follows FaceNext.
struct FaceSet {
  std::vector<int> face_of;             // dart -> face
  std::vector<int> index_in_walk;       // dart -> position inside walks[face]
  std::vector<std::vector<int>> walks;  // face -> darts
  int outer_face = -1;
  int NumFaces() const { return static_cast<int>(walks.size()); }
};

// One step of a boundary walk: the dart leaving `vertex`. A vertex may repeat
// (cut vertices); each occurrence is its own step.
struct BoundaryStep {
  int dart;
  int vertex;
};

// Structural problems only (lengths, ranges, involution, permutation). Empty
// result means the orbit computations below are safe to run.
std::vector<std::string> StructuralProblems(const CombinatorialMap& map);

FaceSet ComputeFaces(const CombinatorialMap& map);

std::vector<BoundaryStep> BoundaryWalk(const CombinatorialMap& map,
                                       const FaceSet& faces, int face);

// Darts around each vertex in rot order, starting with the smallest dart.
std::vector<std::vector<int>> DartsAround(const CombinatorialMap& map);

// Number of connected components of the underlying graph (isolated vertex
// ids that no dart mentions do not count).
int CountComponents(const CombinatorialMap& map);

}  // namespace sdx

#endif  // SDX_COMBINATORIAL_MAP_H_
