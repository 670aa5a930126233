#include "sdx/embedded_graph.h"

#include <deque>

#include "sdx/errors.h"

namespace sdx {

int EmbeddedGraph::AddVertex() {
  rot.emplace_back();
  return NumVertices() - 1;
}

int EmbeddedGraph::AddLink(int a, int b) {
  int l = NumLinks();
  tail.push_back(a);
  tail.push_back(b);
  pos_in_rot.push_back(-1);
  pos_in_rot.push_back(-1);
  return l;
}

void EmbeddedGraph::SetRotation(int v, std::vector<int> darts) {
  for (size_t j = 0; j < darts.size(); ++j) {
    int d = darts[j];
    if (tail[d] != v) throw FatalDiagnostic("rotation of a vertex lists a foreign dart");
    pos_in_rot[d] = static_cast<int>(j);
  }
  rot[v] = std::move(darts);
}

int EmbeddedGraph::NextCCW(int d) const {
  const auto& r = rot[tail[d]];
  return r[(pos_in_rot[d] + 1) % r.size()];
}

std::vector<int> EmbeddedGraph::ComponentOf(int* count) const {
  std::vector<int> comp(NumVertices(), -1);
  int c = 0;
  auto nb = Neighbors();
  for (int v = 0; v < NumVertices(); ++v) {
    if (comp[v] >= 0) continue;
    std::deque<int> q{v};
    comp[v] = c;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : nb[x])
        if (comp[y] < 0) {
          comp[y] = c;
          q.push_back(y);
        }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

std::vector<int> EmbeddedGraph::Faces(int* count) const {
  const int n = static_cast<int>(tail.size());
  std::vector<int> face(n, -1);
  int f = 0;
  for (int d = 0; d < n; ++d) {
    if (face[d] >= 0) continue;
    if (pos_in_rot[d] < 0) throw FatalDiagnostic("dart missing from its rotation");
    int x = d;
    do {
      face[x] = f;
      x = NextCCW(x ^ 1);
    } while (x != d);
    ++f;
  }
  if (count) *count = f;
  return face;
}

std::vector<std::vector<int>> EmbeddedGraph::Neighbors() const {
  std::vector<std::vector<int>> nb(NumVertices());
  for (int d = 0; d < static_cast<int>(tail.size()); ++d) nb[tail[d]].push_back(Head(d));
  return nb;
}

std::vector<int> EmbeddedGraph::Bfs(int src) const {
  std::vector<int> dist(NumVertices(), -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int d : rot[x]) {
      int y = Head(d);
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
    }
  }
  return dist;
}

}  // namespace sdx
