#ifndef SDX_EMBEDDED_GRAPH_H_
#define SDX_EMBEDDED_GRAPH_H_

#include <vector>

namespace sdx {

// Undirected graph with a rotation system. Link l owns darts 2l (a->b) and
// 2l+1 (b->a). rot[v] lists the darts leaving v counterclockwise.
struct EmbeddedGraph {
  std::vector<int> tail;
  std::vector<std::vector<int>> rot;
  std::vector<int> pos_in_rot;

  int NumVertices() const { return static_cast<int>(rot.size()); }
  int NumLinks() const { return static_cast<int>(tail.size()) / 2; }
  int AddVertex();
  int AddLink(int a, int b);
  int Head(int d) const { return tail[d ^ 1]; }
  // darts must be exactly the darts leaving v, in ccw order
  void SetRotation(int v, std::vector<int> darts);
  int NextCCW(int d) const;

  std::vector<int> ComponentOf(int* count = nullptr) const;
  // Face orbits d -> NextCCW(twin d); returns face id per dart.
  std::vector<int> Faces(int* count = nullptr) const;
  std::vector<int> Bfs(int src) const;
  std::vector<std::vector<int>> Neighbors() const;
};

}  // namespace sdx

#endif  // SDX_EMBEDDED_GRAPH_H_
