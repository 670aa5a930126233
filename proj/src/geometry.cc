#include "sdx/geometry.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "sdx/errors.h"

namespace sdx {

namespace {

using i128 = __int128;

int64_t Cross(int64_t ax, int64_t ay, int64_t bx, int64_t by) {
  return ax * by - ay * bx;
}

bool OnSegment(const Point& a, const Point& b, const Point& p) {
  // p collinear with ab assumed
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

// Rational parameter along a segment.
struct Param {
  int64_t num, den;  // den > 0
  bool operator<(const Param& o) const {
    return static_cast<i128>(num) * o.den < static_cast<i128>(o.num) * den;
  }
  bool operator==(const Param& o) const {
    return static_cast<i128>(num) * o.den == static_cast<i128>(o.num) * den;
  }
};

Param ParamOn(const Point& a, const Point& b, const Point& c, const Point& d) {
  int64_t rx = b[0] - a[0], ry = b[1] - a[1];
  int64_t sx = d[0] - c[0], sy = d[1] - c[1];
  int64_t den = Cross(rx, ry, sx, sy);
  int64_t num = Cross(c[0] - a[0], c[1] - a[1], sx, sy);
  if (den < 0) {
    den = -den;
    num = -num;
  }
  return {num, den};
}

// CCW angular comparison of integer direction vectors, starting at angle 0.
bool AngleLess(const std::array<int64_t, 2>& u, const std::array<int64_t, 2>& v) {
  auto upper = [](const std::array<int64_t, 2>& w) {
    return w[1] > 0 || (w[1] == 0 && w[0] > 0);
  };
  bool uu = upper(u), vu = upper(v);
  if (uu != vu) return uu;
  return Cross(u[0], u[1], v[0], v[1]) > 0;
}

std::string S(int64_t x) { return std::to_string(x); }

}  // namespace

int Orientation(const Point& a, const Point& b, const Point& c) {
  int64_t v = Cross(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1]);
  return (v > 0) - (v < 0);
}

bool ProperlyCross(const Point& a, const Point& b, const Point& c,
                   const Point& d) {
  int o1 = Orientation(a, b, c), o2 = Orientation(a, b, d);
  int o3 = Orientation(c, d, a), o4 = Orientation(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

InsertionInstance IngestStraightLine(const StraightLineInput& in) {
  const int n = static_cast<int>(in.points.size());
  const int m = static_cast<int>(in.edges.size());
  if (n == 0) throw InputError("/points", "no points");
  if (m == 0) throw InputError("/edges", "no edges");
  {
    std::set<Point> seen;
    for (int i = 0; i < n; ++i)
      if (!seen.insert(in.points[i]).second)
        throw InputError("/points/" + S(i), "duplicate coordinates");
  }
  std::set<std::pair<int, int>> edge_set;
  for (int e = 0; e < m; ++e) {
    auto [u, v] = in.edges[e];
    std::string where = "/edges/" + S(e);
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InputError(where, "endpoint index out of range");
    if (u == v) throw InputError(where, "edge endpoints coincide");
    if (!edge_set.insert(std::minmax(u, v)).second)
      throw InputError(where, "duplicate edge");
  }
  // a vertex interior to a segment
  for (int e = 0; e < m; ++e) {
    const Point& a = in.points[in.edges[e].first];
    const Point& b = in.points[in.edges[e].second];
    for (int p = 0; p < n; ++p) {
      if (p == in.edges[e].first || p == in.edges[e].second) continue;
      if (Orientation(a, b, in.points[p]) == 0 && OnSegment(a, b, in.points[p]))
        throw InputError("/edges/" + S(e),
                         "vertex " + S(p) + " lies in the interior of the segment");
    }
  }
  // pairwise crossings
  std::vector<std::vector<std::pair<Param, int>>> on_edge(m);  // (t, other edge)
  std::vector<std::pair<int, int>> crossing_pairs;
  for (int e = 0; e < m; ++e)
    for (int f = e + 1; f < m; ++f) {
      auto [a1, b1] = in.edges[e];
      auto [a2, b2] = in.edges[f];
      const Point &A = in.points[a1], &B = in.points[b1];
      const Point &C = in.points[a2], &D = in.points[b2];
      bool share = a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2;
      int o1 = Orientation(A, B, C), o2 = Orientation(A, B, D);
      if (o1 == 0 && o2 == 0) {
        // collinear: overlapping unless they only touch in a shared endpoint
        bool overlap;
        if (share) {
          int shared = (a1 == a2 || a1 == b2) ? a1 : b1;
          int oe = (shared == a1) ? b1 : a1;
          int of = (shared == a2) ? b2 : a2;
          const Point& S0 = in.points[shared];
          const Point& P = in.points[oe];
          const Point& Q = in.points[of];
          overlap = (P[0] - S0[0]) * (Q[0] - S0[0]) +
                        (P[1] - S0[1]) * (Q[1] - S0[1]) > 0;
        } else {
          overlap = OnSegment(A, B, C) || OnSegment(A, B, D) ||
                    OnSegment(C, D, A) || OnSegment(C, D, B);
        }
        if (overlap)
          throw InputError("/edges/" + S(f),
                           "collinear overlap with edge " + S(e));
        continue;
      }
      if (share) continue;  // distinct lines through a common point
      if (ProperlyCross(A, B, C, D)) {
        on_edge[e].push_back({ParamOn(A, B, C, D), f});
        on_edge[f].push_back({ParamOn(C, D, A, B), e});
        crossing_pairs.push_back({e, f});
      }
    }
  for (int e = 0; e < m; ++e) {
    auto& v = on_edge[e];
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
      if (x.first == y.first) return x.second < y.second;
      return x.first < y.first;
    });
    for (size_t j = 1; j < v.size(); ++j)
      if (v[j].first == v[j - 1].first)
        throw InputError("/edges/" + S(e),
                         "three or more segments are concurrent (edges " +
                             S(v[j - 1].second) + ", " + S(v[j].second) + ")");
  }
  // crossing vertex ids
  std::map<std::pair<int, int>, int> cross_id;
  {
    int next = n;
    for (auto pr : crossing_pairs) cross_id[pr] = next++;
  }
  const int nv = n + static_cast<int>(crossing_pairs.size());
  std::vector<Role> role(nv, Role::kReal);
  for (int v = n; v < nv; ++v) role[v] = Role::kCrossing;

  CombinatorialMap map;
  std::vector<int> edge_of;
  std::vector<std::array<int64_t, 2>> dir;
  for (int e = 0; e < m; ++e) {
    auto [u, v] = in.edges[e];
    std::vector<int> chain{u};
    for (auto& [t, f] : on_edge[e]) chain.push_back(cross_id.at(std::minmax(e, f)));
    chain.push_back(v);
    std::array<int64_t, 2> fw{in.points[v][0] - in.points[u][0],
                              in.points[v][1] - in.points[u][1]};
    for (size_t j = 0; j + 1 < chain.size(); ++j) {
      int d = map.num_darts;
      map.num_darts += 2;
      map.twin.push_back(d + 1);
      map.twin.push_back(d);
      map.vertex_of.push_back(chain[j]);
      map.vertex_of.push_back(chain[j + 1]);
      edge_of.push_back(e);
      edge_of.push_back(e);
      dir.push_back(fw);
      dir.push_back({-fw[0], -fw[1]});
    }
  }
  map.rot.assign(map.num_darts, -1);
  std::vector<std::vector<int>> at(nv);
  for (int d = 0; d < map.num_darts; ++d) at[map.vertex_of[d]].push_back(d);
  for (int v = 0; v < nv; ++v) {
    auto& ds = at[v];
    if (ds.empty())
      throw InputError("/points/" + S(v), "vertex is not on any edge (drawing is disconnected)");
    std::sort(ds.begin(), ds.end(),
              [&](int a, int b) { return AngleLess(dir[a], dir[b]); });
    for (size_t j = 0; j < ds.size(); ++j) map.rot[ds[j]] = ds[(j + 1) % ds.size()];
  }
  // outer face: lowest-then-leftmost vertex, corner facing down
  int low = 0;
  for (int p = 1; p < n; ++p) {
    const Point& a = in.points[p];
    const Point& b = in.points[low];
    if (a[1] < b[1] || (a[1] == b[1] && a[0] < b[0])) low = p;
  }
  map.outer_face_dart = at[low].front();

  if (CountComponents(map) != 1)
    throw InputError("/edges", "drawing is disconnected");
  auto res = ValidateDrawing(map, role, edge_of);
  if (!res.ok())
    throw InputError("", "ingested drawing failed validation: " +
                             res.issues.front().message);
  InsertionInstance inst;
  inst.drawing = std::move(*res.drawing);
  inst.added = in.added;
  inst.budgets = in.budgets;
  inst.variant = in.variant;
  CheckInstance(inst);
  return inst;
}

namespace {

// Portable helpers; std distributions are implementation-defined.
uint64_t Below(std::mt19937_64& rng, uint64_t bound) { return rng() % bound; }

template <typename T>
void Shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[Below(rng, i)]);
}

bool Connected(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  auto find = [&](int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  int comps = n;
  for (auto [u, v] : edges) {
    int a = find(u), b = find(v);
    if (a != b) {
      p[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

bool GeneralPosition(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (pts[a] == pts[b]) return false;
      for (int c = b + 1; c < n; ++c)
        if (Orientation(pts[a], pts[b], pts[c]) == 0) return false;
    }
  return true;
}

}  // namespace

GeneratedInstance RandomInstance(int n, int m, int k, int ell, uint64_t seed,
                                 Variant variant) {
  if (n < 2) throw std::runtime_error("random_instance: need n >= 2");
  const int pairs = n * (n - 1) / 2;
  if (m + k > pairs)
    throw std::runtime_error("random_instance: m + k exceeds C(n,2)");
  if (m < n - 1)
    throw std::runtime_error("random_instance: m < n-1 cannot be connected");
  std::mt19937_64 rng(seed);
  GeneratedInstance g;
  g.seed = seed;
  int64_t grid = std::max<int64_t>(4, 4LL * n * n);
  constexpr int kPointTries = 200;
  constexpr int kEdgeTries = 256;
  constexpr int64_t kMaxGrid = int64_t{1} << 20;
  for (int pt = 0; pt < kPointTries; ++pt) {
    std::vector<Point> pts(n);
    for (auto& p : pts)
      p = {static_cast<int64_t>(Below(rng, grid)),
           static_cast<int64_t>(Below(rng, grid))};
    ++g.attempts;
    if (!GeneralPosition(pts)) {
      grid = std::min(grid * 2, kMaxGrid);
      continue;
    }
    std::vector<std::pair<int, int>> all;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) all.push_back({u, v});
    bool degenerate = false;
    for (int et = 0; et < kEdgeTries && !degenerate; ++et) {
      Shuffle(all, rng);
      ++g.attempts;
      std::vector<std::pair<int, int>> edges(all.begin(), all.begin() + m);
      if (!Connected(n, edges)) continue;
      std::vector<std::pair<int, int>> rest(all.begin() + m, all.end());
      std::sort(edges.begin(), edges.end());
      StraightLineInput in;
      in.points = pts;
      in.edges = edges;
      in.added.assign(rest.begin(), rest.begin() + k);
      in.budgets.assign(k, ell);
      in.variant = variant;
      try {
        g.instance = IngestStraightLine(in);
      } catch (const InputError&) {
        degenerate = true;  // concurrent crossings
        grid = std::min(grid * 2, kMaxGrid);
        continue;
      }
      g.input = std::move(in);
      g.grid = grid;
      return g;
    }
  }
  throw std::runtime_error("random_instance: resample budget exhausted (seed " +
                           std::to_string(seed) + ")");
}

}  // namespace sdx
