#include "sdx/crossable.h"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "sdx/embedded_graph.h"
#include "sdx/errors.h"

namespace sdx {

// ---------------------------------------------------------------- G^p_d

int GpdGraph::Diameter() const {
  int best = 0;
  for (int v = 0; v < NumVertices(); ++v) {
    std::vector<int> dist(NumVertices(), -1);
    std::deque<int> q{v};
    dist[v] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      best = std::max(best, dist[x]);
      for (int y : adj[x])
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
    }
  }
  return best;
}

namespace {

std::vector<char> InsideAnyHole(const Drawing& d, const HoleDecomposition& hd) {
  std::vector<char> in(d.NumSegments(), 0);
  for (const auto& row : hd.inside)
    for (int s = 0; s < d.NumSegments(); ++s) in[s] = in[s] || row[s];
  return in;
}

}  // namespace

GpdGraph BuildGpd(const InsertionInstance& inst, const HoleDecomposition& hd) {
  const Drawing& d = inst.drawing;
  GpdGraph g;
  auto inside = InsideAnyHole(d, hd);
  auto add = [&](GpdGraph::Kind k, int ref) {
    g.kind.push_back(k);
    g.ref.push_back(ref);
    g.adj.emplace_back();
    return g.NumVertices() - 1;
  };
  std::vector<int> vid(d.NumVertices(), -1);
  for (int x = 0; x < d.map.num_darts; ++x)
    if (!inside[d.seg_of[x]] && vid[d.Tail(x)] < 0) vid[d.Tail(x)] = -2;
  for (int v = 0; v < d.NumVertices(); ++v)
    if (vid[v] == -2) vid[v] = add(GpdGraph::kOriginal, v);
  std::vector<int> eid(d.NumSegments(), -1);
  for (int s = 0; s < d.NumSegments(); ++s)
    if (!inside[s]) eid[s] = add(GpdGraph::kEdge, s);
  std::vector<int> fid(d.faces.NumFaces(), -1);
  for (int f = 0; f < d.faces.NumFaces(); ++f)
    if (hd.hole_of[f] < 0) fid[f] = add(GpdGraph::kFace, f);
  std::vector<int> hid(hd.NumHoles());
  for (int h = 0; h < hd.NumHoles(); ++h) hid[h] = add(GpdGraph::kFace, -1 - h);
  std::vector<std::set<int>> nb(g.NumVertices());
  auto link = [&](int a, int b) {
    nb[a].insert(b);
    nb[b].insert(a);
  };
  for (int s = 0; s < d.NumSegments(); ++s) {
    if (inside[s]) continue;
    int x = d.segment_dart[s];
    link(eid[s], vid[d.Tail(x)]);
    link(eid[s], vid[d.Head(x)]);
  }
  for (int x = 0; x < d.map.num_darts; ++x) {
    if (inside[d.seg_of[x]]) continue;
    int f = d.faces.face_of[x];
    int fv = hd.hole_of[f] >= 0 ? hid[hd.hole_of[f]] : fid[f];
    link(fv, vid[d.Tail(x)]);
    link(fv, eid[d.seg_of[x]]);
  }
  for (int v = 0; v < g.NumVertices(); ++v) g.adj[v].assign(nb[v].begin(), nb[v].end());
  return g;
}

std::string GpdToDot(const GpdGraph& g, const Drawing& d) {
  std::ostringstream os;
  os << "graph gpd {\n";
  for (int v = 0; v < g.NumVertices(); ++v) {
    os << "  n" << v << " [";
    switch (g.kind[v]) {
      case GpdGraph::kOriginal:
        os << "role=\"" << (d.role[g.ref[v]] == Role::kReal ? "real" : "crossing")
           << "\" label=\"v" << g.ref[v] << "\" shape=circle";
        break;
      case GpdGraph::kEdge:
        os << "role=\"edge\" label=\"s" << g.ref[v] << "\" edge=" << d.edge_of[d.segment_dart[g.ref[v]]]
           << " shape=box";
        break;
      case GpdGraph::kFace:
        if (g.ref[v] >= 0)
          os << "role=\"face\" label=\"f" << g.ref[v] << "\" shape=diamond";
        else
          os << "role=\"hole\" label=\"H" << (-1 - g.ref[v]) << "\" shape=doublecircle";
        break;
    }
    os << "];\n";
  }
  for (int v = 0; v < g.NumVertices(); ++v)
    for (int w : g.adj[v])
      if (v < w) os << "  n" << v << " -- n" << w << ";\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------- walks

namespace {

bool Interleave(int a, int b, int c, int e) {
  if (a == c || a == e || b == c || b == e) return false;
  if (a > b) std::swap(a, b);
  bool ic = a < c && c < b, ie = a < e && e < b;
  return ic != ie;
}

// Side test for closed curves made of crossed segments: parity of the
// crossings along a fixed planarization tree path from a reference vertex.
struct ParityTree {
  int root = -1;
  std::vector<int> parent_seg, parent;

  ParityTree(const Drawing& d, int r) : root(r) {
    parent_seg.assign(d.NumVertices(), -1);
    parent.assign(d.NumVertices(), -2);
    std::deque<int> q{r};
    parent[r] = -1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int x : d.darts_at[v]) {
        int w = d.Head(x);
        if (parent[w] == -2) {
          parent[w] = v;
          parent_seg[w] = d.seg_of[x];
          q.push_back(w);
        }
      }
    }
  }
  // true iff u lies on the other side of the curve than the root
  bool Flipped(int u, const std::vector<int>& mult) const {
    int p = 0;
    for (int v = u; parent[v] >= 0; v = parent[v]) p ^= mult[parent_seg[v]] & 1;
    return p;
  }
};

class WalkChecker {
 public:
  WalkChecker(const InsertionInstance& inst, int i)
      : inst_(inst), d_(inst.drawing), i_(i),
        tree_(d_, d_.Tail(d_.faces.walks[d_.faces.outer_face][0])),
        mult_(d_.NumSegments(), 0) {
    for (int j = 0; j < inst.k(); ++j) {
      if (j == i) continue;
      others_.push_back(inst.added[j].first);
      others_.push_back(inst.added[j].second);
    }
    std::sort(others_.begin(), others_.end());
    others_.erase(std::unique(others_.begin(), others_.end()), others_.end());
  }

  int Pos(int dart) const { return d_.faces.index_in_walk[dart]; }

  // excursion: leaves faces[j1] by darts[j1], returns into faces[j2] by darts[j2-1]
  bool Justified(const CurveWalk& w, int j1, int j2) {
    if (others_.empty()) return false;
    for (int j = j1; j <= j2; ++j)
      if (w.faces[j] == d_.faces.outer_face) return true;  // side of infinity undetermined
    for (int j = j1; j < j2; ++j) ++mult_[d_.seg_of[w.darts[j]]];
    bool ok = false;
    for (int u : others_)
      if (tree_.Flipped(u, mult_)) {
        ok = true;
        break;
      }
    for (int j = j1; j < j2; ++j) --mult_[d_.seg_of[w.darts[j]]];
    return ok;
  }

 private:
  const InsertionInstance& inst_;
  const Drawing& d_;
  int i_;
  ParityTree tree_;
  std::vector<int> mult_;
  std::vector<int> others_;
};

}  // namespace

bool WalkRealizable(const Drawing& d, const CurveWalk& w) {
  const int m = static_cast<int>(w.darts.size());
  std::map<int, std::vector<int>> visits;
  for (int j = 0; j <= m; ++j) visits[w.faces[j]].push_back(j);
  auto pos = [&](int x) { return d.faces.index_in_walk[x]; };
  for (auto& [f, js] : visits) {
    std::vector<std::array<int, 2>> passages, excursions;
    for (int j : js)
      if (j > 0 && j < m) passages.push_back({pos(d.map.twin[w.darts[j - 1]]), pos(w.darts[j])});
    for (size_t a = 0; a + 1 < js.size(); ++a)
      excursions.push_back({pos(w.darts[js[a]]), pos(d.map.twin[w.darts[js[a + 1] - 1]])});
    for (auto* set : {&passages, &excursions})
      for (size_t a = 0; a < set->size(); ++a)
        for (size_t b = a + 1; b < set->size(); ++b)
          if (Interleave((*set)[a][0], (*set)[a][1], (*set)[b][0], (*set)[b][1])) return false;
  }
  return true;
}

bool WalkRevisitsJustified(const InsertionInstance& inst, const CurveWalk& w, int i) {
  WalkChecker ck(inst, i);
  const int m = static_cast<int>(w.darts.size());
  std::map<int, int> last;
  for (int j = 0; j <= m; ++j) {
    auto it = last.find(w.faces[j]);
    if (it != last.end() && !ck.Justified(w, it->second, j)) return false;
    last[w.faces[j]] = j;
  }
  return true;
}

int CrossableResult::CountParts() const {
  int c = 0;
  for (const auto& h : part_crossable)
    for (const auto& e : h) {
      if (e.size() < 2) continue;
      for (char x : e) c += x;
    }
  return c;
}

namespace {

void FillParts(const Drawing& d, const HoleDecomposition& hd, CrossableResult& r) {
  r.part_crossable.assign(hd.NumHoles(), {});
  for (int h = 0; h < hd.NumHoles(); ++h) {
    r.part_crossable[h].assign(d.num_edges, {});
    for (int e = 0; e < d.num_edges; ++e) {
      const auto& ps = hd.parts[h][e];
      auto& out = r.part_crossable[h][e];
      out.assign(ps.size(), 0);
      for (size_t p = 0; p < ps.size(); ++p)
        for (int j = ps[p].first; j <= ps[p].last; ++j)
          if (r.segment_crossed[d.seg_of[d.edge_seq[e][j]]]) out[p] = 1;
    }
  }
}

class WalkSearch {
 public:
  WalkSearch(const InsertionInstance& inst, const DualGraph& g, const HoleDecomposition& hd,
             int i, bool pruned)
      : inst_(inst), d_(inst.drawing), hd_(hd), i_(i), pruned_(pruned), ck_(inst, i) {
    ell_ = inst.EffectiveBudget(i);
    auto [s, t] = inst.added[i];
    at_t_.assign(g.num_cells, 0);
    for (int c : g.U[t]) at_t_[c] = 1;
    // distances to U_t through non-hole cells only
    dist_t_.assign(g.num_cells, 1 << 28);
    std::deque<int> q;
    for (int c : g.U[t])
      if (hd.hole_of[c] < 0) {
        dist_t_[c] = 0;
        q.push_back(c);
      }
    while (!q.empty()) {
      int c = q.front();
      q.pop_front();
      for (auto [o, sg] : g.adj[c])
        if (hd.hole_of[o] < 0 && dist_t_[o] > dist_t_[c] + 1) {
          dist_t_[o] = dist_t_[c] + 1;
          q.push_back(o);
        }
    }
    res_.edge_index = i;
    res_.segment_crossed.assign(d_.NumSegments(), 0);
    for (int c : g.U[s]) {
      if (hd.hole_of[c] >= 0) continue;
      w_.faces = {c};
      w_.darts.clear();
      Visit();
    }
    FillParts(d_, hd, res_);
  }

  CrossableResult Take() { return std::move(res_); }

 private:
  void Visit() {
    ++res_.nodes;
    const int cur = w_.faces.back();
    const int used = static_cast<int>(w_.darts.size());
    if (at_t_[cur]) {
      bool ok = pruned_ || (WalkRealizable(d_, w_) && WalkRevisitsJustified(inst_, w_, i_));
      if (ok) {
        ++res_.walks_accepted;
        for (int x : w_.darts) res_.segment_crossed[d_.seg_of[x]] = 1;
      }
    }
    if (used == ell_) return;
    for (int x : d_.faces.walks[cur]) {
      int nxt = d_.faces.face_of[d_.map.twin[x]];
      if (hd_.hole_of[nxt] >= 0) continue;
      if (pruned_ && dist_t_[nxt] > ell_ - used - 1) continue;
      if (pruned_ && !Extendable(x, nxt)) continue;
      w_.darts.push_back(x);
      w_.faces.push_back(nxt);
      Visit();
      w_.faces.pop_back();
      w_.darts.pop_back();
    }
  }

  // incremental version of both filters for the chords completed by x
  bool Extendable(int x, int nxt) {
    const int j = static_cast<int>(w_.faces.size()) - 1;
    const int f = w_.faces[j];
    auto pos = [&](int y) { return d_.faces.index_in_walk[y]; };
    const auto& twin = d_.map.twin;
    if (j > 0) {
      int a = pos(twin[w_.darts[j - 1]]), b = pos(x);
      for (int q = 1; q < j; ++q)
        if (w_.faces[q] == f &&
            Interleave(a, b, pos(twin[w_.darts[q - 1]]), pos(w_.darts[q])))
          return false;
    }
    int prev = -1;
    for (int q = j; q >= 0; --q)
      if (w_.faces[q] == nxt) {
        prev = q;
        break;
      }
    if (prev < 0) return true;
    int a = pos(prev == j ? x : w_.darts[prev]), b = pos(twin[x]);
    int last = -1;
    for (int q = 0; q < prev; ++q) {
      if (w_.faces[q] != nxt) continue;
      if (last >= 0 &&
          Interleave(a, b, pos(w_.darts[last]), pos(twin[w_.darts[q - 1]])))
        return false;
      last = q;
    }
    if (last >= 0 && Interleave(a, b, pos(w_.darts[last]), pos(twin[w_.darts[prev - 1]])))
      return false;
    w_.darts.push_back(x);
    w_.faces.push_back(nxt);
    bool ok = ck_.Justified(w_, prev, j + 1);
    w_.faces.pop_back();
    w_.darts.pop_back();
    return ok;
  }

  const InsertionInstance& inst_;
  const Drawing& d_;
  const HoleDecomposition& hd_;
  int i_;
  bool pruned_;
  WalkChecker ck_;
  int ell_ = 0;
  std::vector<char> at_t_;
  std::vector<int> dist_t_;
  CurveWalk w_;
  CrossableResult res_;
};

}  // namespace

CrossableResult CrossableParts(const InsertionInstance& inst, const DualGraph& g,
                               const HoleDecomposition& hd, int i) {
  return WalkSearch(inst, g, hd, i, true).Take();
}

CrossableResult CrossablePartsOracle(const InsertionInstance& inst, const DualGraph& g,
                                     const HoleDecomposition& hd, int i) {
  return WalkSearch(inst, g, hd, i, false).Take();
}

BigInt CrossableBound(int k, int ell) {
  BigInt fact = 1;
  for (int x = 2; x <= 2 * ell + 1; ++x) fact *= x;
  BigInt inner = BigInt(4) * k * (ell + 2);
  for (int x = 0; x < ell + 1; ++x) inner *= (ell + 1);
  BigInt p = 1;
  for (int x = 0; x < 2 * ell + 1; ++x) p *= inner;
  return BigInt(ell) * fact * p;
}

bool CheckBound(int count, int k, int ell) {
  return count == 0 || BigInt(count) < CrossableBound(k, ell);
}

// ---------------------------------------------------------------- threads

int StitchPlan::NumThreads() const {
  int c = 0;
  for (auto& h : holes) c += static_cast<int>(h.threads.size());
  return c;
}

int StitchPlan::MaxThreadsPerHole() const {
  int c = 0;
  for (auto& h : holes) c = std::max(c, static_cast<int>(h.threads.size()));
  return c;
}

std::vector<std::pair<int, int>> ThreadPairs(const Drawing& d, const HoleDecomposition& hd,
                                             const CrossableResult& cr, int h, int edge,
                                             bool reversed) {
  (void)d;
  std::vector<std::pair<int, int>> out;
  if (!hd.Torn(h, edge)) return out;
  const int m = static_cast<int>(hd.parts[h][edge].size());
  std::vector<int> order;
  for (int p = 0; p < m; ++p) order.push_back(reversed ? m - 1 - p : p);
  int prev = -1;
  for (int p : order) {
    if (!cr.part_crossable[h][edge][p]) continue;
    if (prev >= 0) out.push_back({prev, p});
    prev = p;
  }
  return out;
}

namespace {

using P2 = std::array<int64_t, 2>;

P2 ChainPoint(int r) { return {-r, static_cast<int64_t>(r) * r}; }

int64_t Cross2(const P2& u, const P2& v) { return u[0] * v[1] - u[1] * v[0]; }

bool AngleBefore(const P2& u, const P2& v) {
  auto upper = [](const P2& w) { return w[1] > 0 || (w[1] == 0 && w[0] > 0); };
  bool uu = upper(u), vu = upper(v);
  if (uu != vu) return uu;
  return Cross2(u, v) > 0;
}

// parameter along chord (A,B) where it meets chord (C,D), as num/den
std::pair<int64_t, int64_t> ChordParam(const P2& A, const P2& B, const P2& C, const P2& D) {
  P2 r{B[0] - A[0], B[1] - A[1]}, s{D[0] - C[0], D[1] - C[1]};
  int64_t den = Cross2(r, s);
  int64_t num = Cross2({C[0] - A[0], C[1] - A[1]}, s);
  if (den < 0) {
    den = -den;
    num = -num;
  }
  return {num, den};
}

void ComputePieces(const Drawing& d, const HoleDecomposition& hd, int h, HoleStitches& hs) {
  const int n = d.map.num_darts;
  auto kept = [&](int x) { return !hd.inside[h][d.seg_of[x]]; };
  std::vector<int> rotp(n, -1);
  for (int x = 0; x < n; ++x)
    if (kept(x)) {
      int y = d.map.rot[x];
      while (!kept(y)) y = d.map.rot[y];
      rotp[x] = y;
    }
  hs.piece_of_dart.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (!kept(x) || hs.piece_of_dart[x] >= 0) continue;
    if (hd.hole_of[d.faces.face_of[x]] != h) continue;
    BoundaryPiece bp;
    int y = x;
    int p = static_cast<int>(hs.pieces.size());
    do {
      if (hd.hole_of[d.faces.face_of[y]] != h)
        throw FatalDiagnostic("reduced boundary orbit leaves the hole");
      hs.piece_of_dart[y] = p;
      bp.darts.push_back(y);
      y = rotp[d.map.twin[y]];
    } while (y != x);
    hs.pieces.push_back(std::move(bp));
  }
}

void Locate(const Drawing& d, const HoleDecomposition& hd, int h, const HoleStitches& hs,
            const std::vector<int>& rotinv, ThreadEnd& te) {
  auto kept = [&](int x) { return !hd.inside[h][d.seg_of[x]]; };
  int q = te.dart, minor = 0;
  do {
    q = rotinv[q];
    ++minor;
  } while (!kept(q));
  int nx = d.map.rot[te.dart];
  while (!kept(nx)) nx = d.map.rot[nx];
  te.piece = hs.piece_of_dart[nx];
  if (te.piece < 0) throw FatalDiagnostic("thread endpoint corner is not on a hole boundary piece");
  const auto& ds = hs.pieces[te.piece].darts;
  te.major = static_cast<int>(std::find(ds.begin(), ds.end(), nx) - ds.begin());
  te.minor = minor;
}

}  // namespace

StitchPlan BuildStitches(const InsertionInstance& inst, const HoleDecomposition& hd,
                         const std::vector<CrossableResult>& crossable) {
  const Drawing& d = inst.drawing;
  StitchPlan plan;
  std::vector<int> rotinv(d.map.num_darts);
  for (int x = 0; x < d.map.num_darts; ++x) rotinv[d.map.rot[x]] = x;
  for (int h = 0; h < hd.NumHoles(); ++h) {
    HoleStitches hs;
    ComputePieces(d, hd, h, hs);
    std::map<std::array<int, 3>, int> index;
    for (int i = 0; i < inst.k(); ++i)
      for (int e = 0; e < d.num_edges; ++e) {
        auto fw = ThreadPairs(d, hd, crossable[i], h, e, false);
        auto bw = ThreadPairs(d, hd, crossable[i], h, e, true);
        std::set<std::pair<int, int>> a(fw.begin(), fw.end()), b;
        for (auto [x, y] : bw) b.insert({std::min(x, y), std::max(x, y)});
        if (a != b) hs.orientation_invariant = false;
        for (auto [pa, pb] : fw) {
          std::array<int, 3> key{e, pa, pb};
          auto it = index.find(key);
          if (it != index.end()) {
            hs.threads[it->second].for_mask |= 1u << i;
            continue;
          }
          Thread t;
          t.edge = e;
          t.part_a = pa;
          t.part_b = pb;
          t.for_mask = 1u << i;
          const auto& seq = d.edge_seq[e];
          const auto& A = hd.parts[h][e][pa];
          const auto& B = hd.parts[h][e][pb];
          t.a.vertex = d.Head(seq[A.last]);
          t.a.dart = seq[A.last + 1];
          t.b.vertex = d.Tail(seq[B.first]);
          t.b.dart = d.map.twin[seq[B.first - 1]];
          Locate(d, hd, h, hs, rotinv, t.a);
          Locate(d, hd, h, hs, rotinv, t.b);
          t.embedded = t.a.piece == t.b.piece;
          index[key] = static_cast<int>(hs.threads.size());
          hs.threads.push_back(t);
        }
      }
    // ranks per piece
    const int P = static_cast<int>(hs.pieces.size());
    std::vector<std::vector<std::pair<int, int>>> keys(P);
    for (int t = 0; t < static_cast<int>(hs.threads.size()); ++t) {
      auto& th = hs.threads[t];
      if (!th.embedded) {
        hs.observation_violations.push_back(t);
        continue;
      }
      keys[th.a.piece].push_back({th.a.major, th.a.minor});
      keys[th.b.piece].push_back({th.b.major, th.b.minor});
    }
    hs.endpoints_per_piece.assign(P, 0);
    for (int p = 0; p < P; ++p) {
      std::sort(keys[p].begin(), keys[p].end());
      keys[p].erase(std::unique(keys[p].begin(), keys[p].end()), keys[p].end());
      hs.endpoints_per_piece[p] = static_cast<int>(keys[p].size());
    }
    auto rank_of = [&](const ThreadEnd& te) {
      const auto& ks = keys[te.piece];
      return static_cast<int>(std::lower_bound(ks.begin(), ks.end(), std::pair{te.major, te.minor}) -
                              ks.begin());
    };
    for (auto& th : hs.threads)
      if (th.embedded) {
        th.a.rank = rank_of(th.a);
        th.b.rank = rank_of(th.b);
      }
    // crossings: interleaving chords on one piece
    const int T = static_cast<int>(hs.threads.size());
    std::vector<std::vector<std::pair<std::pair<int64_t, int64_t>, int>>> along(T);
    for (int t1 = 0; t1 < T; ++t1)
      for (int t2 = t1 + 1; t2 < T; ++t2) {
        const auto &A = hs.threads[t1], &B = hs.threads[t2];
        if (!A.embedded || !B.embedded || A.a.piece != B.a.piece) continue;
        if (!Interleave(A.a.rank, A.b.rank, B.a.rank, B.b.rank)) continue;
        StitchCrossing sc;
        sc.t1 = t1;
        sc.t2 = t2;
        P2 a1 = ChainPoint(A.a.rank), b1 = ChainPoint(A.b.rank);
        P2 a2 = ChainPoint(B.a.rank), b2 = ChainPoint(B.b.rank);
        P2 r1{b1[0] - a1[0], b1[1] - a1[1]}, r2{b2[0] - a2[0], b2[1] - a2[1]};
        std::vector<std::pair<P2, int>> dirs{{{-r1[0], -r1[1]}, 2 * t1},
                                             {r1, 2 * t1 + 1},
                                             {{-r2[0], -r2[1]}, 2 * t2},
                                             {r2, 2 * t2 + 1}};
        std::sort(dirs.begin(), dirs.end(),
                  [](const auto& x, const auto& y) { return AngleBefore(x.first, y.first); });
        for (auto& dd : dirs) sc.rot_threads.push_back(dd.second);
        int id = static_cast<int>(hs.crossings.size());
        hs.crossings.push_back(sc);
        along[t1].push_back({ChordParam(a1, b1, a2, b2), id});
        along[t2].push_back({ChordParam(a2, b2, a1, b1), id});
      }
    for (int t = 0; t < T; ++t) {
      auto& v = along[t];
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        __int128 l = static_cast<__int128>(x.first.first) * y.first.second;
        __int128 r = static_cast<__int128>(y.first.first) * x.first.second;
        return l < r;
      });
      for (auto& [pr, id] : v) hs.threads[t].crossings.push_back(id);
    }
    // per-piece chord diagram: Euler and the region count C + X + 2
    for (int p = 0; p < P; ++p) {
      const int N = hs.endpoints_per_piece[p];
      if (N == 0) continue;
      EmbeddedGraph eg;
      for (int r = 0; r < N; ++r) eg.AddVertex();
      std::vector<int> xv(hs.crossings.size(), -1);
      std::vector<int> chords;
      for (int t = 0; t < T; ++t)
        if (hs.threads[t].embedded && hs.threads[t].a.piece == p) chords.push_back(t);
      for (int t : chords)
        for (int c : hs.threads[t].crossings)
          if (xv[c] < 0) xv[c] = eg.AddVertex();
      std::vector<int> ring;  // link r -> r+1
      for (int r = 0; r < N; ++r) ring.push_back(eg.AddLink(r, (r + 1) % N));
      std::map<std::pair<int, int>, int> first_dart, last_dart;  // thread -> dart at a / at b
      std::map<std::pair<int, int>, int> at_cross;  // (crossing, 2t+towards_b) -> dart
      int X = 0;
      for (int t : chords) {
        const auto& th = hs.threads[t];
        std::vector<int> nodes{th.a.rank};
        for (int c : th.crossings) nodes.push_back(xv[c]);
        nodes.push_back(th.b.rank);
        for (size_t j = 0; j + 1 < nodes.size(); ++j) {
          int l = eg.AddLink(nodes[j], nodes[j + 1]);
          if (j == 0) first_dart[{t, 0}] = 2 * l;
          if (j + 2 == nodes.size()) last_dart[{t, 0}] = 2 * l + 1;
          if (j > 0) at_cross[{th.crossings[j - 1], 2 * t}] = 2 * l;
          if (j + 2 < nodes.size()) at_cross[{th.crossings[j], 2 * t + 1}] = 2 * l + 1;
        }
      }
      for (int c = 0; c < static_cast<int>(hs.crossings.size()); ++c) {
        if (xv[c] < 0) continue;
        ++X;
        std::vector<int> r;
        for (int code : hs.crossings[c].rot_threads) {
          int t = code / 2, towards_b = code % 2;
          r.push_back(at_cross.at({c, 2 * t + towards_b}));
        }
        eg.SetRotation(xv[c], r);
      }
      for (int r = 0; r < N; ++r) {
        std::vector<std::pair<int, int>> ch;  // ((r - other) mod N, dart)
        for (int t : chords) {
          const auto& th = hs.threads[t];
          if (th.a.rank == r) ch.push_back({((r - th.b.rank) % N + N) % N, first_dart[{t, 0}]});
          if (th.b.rank == r) ch.push_back({((r - th.a.rank) % N + N) % N, last_dart[{t, 0}]});
        }
        std::sort(ch.begin(), ch.end());
        std::vector<int> rr{2 * ring[(r + N - 1) % N] + 1};
        for (auto& [k2, dd] : ch) rr.push_back(dd);
        rr.push_back(2 * ring[r]);
        if (N == 1) rr = {2 * ring[0] + 1, 2 * ring[0]};
        eg.SetRotation(r, rr);
      }
      int F = 0;
      eg.Faces(&F);
      int C = static_cast<int>(chords.size());
      int V = eg.NumVertices(), E = eg.NumLinks();
      if (V - E + F != 2 || F != C + X + 2) hs.euler_ok = false;
    }
    plan.holes.push_back(std::move(hs));
  }
  return plan;
}

}  // namespace sdx
