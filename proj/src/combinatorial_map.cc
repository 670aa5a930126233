#include "sdx/combinatorial_map.h"

#include <algorithm>
#include <numeric>

namespace sdx {

int CombinatorialMap::NumVertices() const {
  int n = 0;
  for (int v : vertex_of) n = std::max(n, v + 1);
  return n;
}

std::vector<std::string> StructuralProblems(const CombinatorialMap& map) {
  std::vector<std::string> out;
  const int n = map.num_darts;
  if (n <= 0) {
    out.push_back("map has no darts");
    return out;
  }
  if (static_cast<int>(map.twin.size()) != n ||
      static_cast<int>(map.rot.size()) != n ||
      static_cast<int>(map.vertex_of.size()) != n) {
    out.push_back("twin/rot/vertex_of must all have length darts");
    return out;
  }
  for (int d = 0; d < n; ++d) {
    if (map.twin[d] < 0 || map.twin[d] >= n)
      out.push_back("twin[" + std::to_string(d) + "] out of range");
    if (map.rot[d] < 0 || map.rot[d] >= n)
      out.push_back("rot[" + std::to_string(d) + "] out of range");
    if (map.vertex_of[d] < 0)
      out.push_back("vertex_of[" + std::to_string(d) + "] negative");
  }
  if (!out.empty()) return out;
  for (int d = 0; d < n; ++d) {
    if (map.twin[d] == d)
      out.push_back("twin has fixed point at dart " + std::to_string(d));
    else if (map.twin[map.twin[d]] != d)
      out.push_back("twin is not an involution at dart " + std::to_string(d));
  }
  std::vector<int> hits(n, 0);
  for (int d = 0; d < n; ++d) ++hits[map.rot[d]];
  for (int d = 0; d < n; ++d)
    if (hits[d] != 1) {
      out.push_back("rot is not a permutation (dart " + std::to_string(d) +
                    " has " + std::to_string(hits[d]) + " preimages)");
      break;
    }
  if (!out.empty()) return out;
  for (int d = 0; d < n; ++d)
    if (map.vertex_of[map.rot[d]] != map.vertex_of[d]) {
      out.push_back("rot leaves vertex " + std::to_string(map.vertex_of[d]) +
                    " at dart " + std::to_string(d));
      break;
    }
  // every vertex orbit must be a single rot cycle
  std::vector<int> seen(n, -1);
  std::vector<int> owner(map.NumVertices(), -1);
  for (int d = 0; d < n; ++d) {
    if (seen[d] >= 0) continue;
    int x = d;
    do {
      seen[x] = d;
      x = map.rot[x];
    } while (x != d);
    int v = map.vertex_of[d];
    if (owner[v] >= 0 && owner[v] != d) {
      out.push_back("vertex " + std::to_string(v) +
                    " has more than one rotation cycle");
    }
    owner[v] = d;
  }
  for (int v = 0; v < static_cast<int>(owner.size()); ++v)
    if (owner[v] < 0) {
      out.push_back("vertex id " + std::to_string(v) + " has no darts");
      break;
    }
  if (map.outer_face_dart < 0 || map.outer_face_dart >= n)
    out.push_back("outer_face_dart out of range");
  return out;
}

FaceSet ComputeFaces(const CombinatorialMap& map) {
  FaceSet fs;
  const int n = map.num_darts;
  fs.face_of.assign(n, -1);
  fs.index_in_walk.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (fs.face_of[d] >= 0) continue;
    int f = fs.NumFaces();
    fs.walks.emplace_back();
    int x = d;
    do {
      fs.face_of[x] = f;
      fs.index_in_walk[x] = static_cast<int>(fs.walks[f].size());
      fs.walks[f].push_back(x);
      x = map.FaceNext(x);
    } while (x != d);
  }
  if (map.outer_face_dart >= 0 && map.outer_face_dart < n)
    fs.outer_face = fs.face_of[map.outer_face_dart];
  return fs;
}

std::vector<BoundaryStep> BoundaryWalk(const CombinatorialMap& map,
                                       const FaceSet& faces, int face) {
  std::vector<BoundaryStep> out;
  for (int d : faces.walks[face]) out.push_back({d, map.vertex_of[d]});
  return out;
}

std::vector<std::vector<int>> DartsAround(const CombinatorialMap& map) {
  std::vector<std::vector<int>> out(map.NumVertices());
  std::vector<char> done(map.num_darts, 0);
  for (int d = 0; d < map.num_darts; ++d) {
    if (done[d]) continue;
    auto& list = out[map.vertex_of[d]];
    int x = d;
    do {
      done[x] = 1;
      list.push_back(x);
      x = map.rot[x];
    } while (x != d);
  }
  return out;
}

int CountComponents(const CombinatorialMap& map) {
  const int nv = map.NumVertices();
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> used(nv, 0);
  for (int d = 0; d < map.num_darts; ++d) {
    int a = map.vertex_of[d], b = map.vertex_of[map.twin[d]];
    used[a] = used[b] = 1;
    parent[find(a)] = find(b);
  }
  int c = 0;
  for (int v = 0; v < nv; ++v)
    if (used[v] && find(v) == v) ++c;
  return c;
}

}  // namespace sdx
