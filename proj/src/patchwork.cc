#include "sdx/patchwork.h"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "sdx/errors.h"

namespace sdx {

const char* RoleName(PVertex::Role r) {
  switch (r) {
    case PVertex::kReal: return "real";
    case PVertex::kCrossing: return "crossing";
    case PVertex::kSegment: return "segment";
    case PVertex::kCell: return "cell";
    case PVertex::kShadow: return "shadow";
  }
  return "?";
}

namespace {

struct StitchVerts {
  std::vector<std::array<int, 2>> edges;  // per stitch edge: vertex near a-side node, near b-side node
};

}  // namespace

Patchwork BuildPatchwork(const InsertionInstance& inst, const HoleDecomposition& hd,
                         const StitchPlan& stitches, const std::vector<CrossableResult>& crossable) {
  const Drawing& d = inst.drawing;
  Patchwork p;
  p.k = inst.k();
  p.subdiv = p.k <= 1 ? 2 : p.k;
  const int S = d.NumSegments(), sub = p.subdiv;
  std::vector<char> inside(S, 0);
  for (const auto& row : hd.inside)
    for (int s = 0; s < S; ++s) inside[s] = inside[s] || row[s];
  auto kept = [&](int x) { return !inside[d.seg_of[x]]; };
  auto add = [&](PVertex pv) {
    p.v.push_back(pv);
    return p.NumVertices() - 1;
  };

  p.of_drawing_vertex.assign(d.NumVertices(), -1);
  for (int u = 0; u < d.NumVertices(); ++u) {
    bool any = false;
    for (int x : d.darts_at[u]) any = any || kept(x);
    if (!any) continue;
    PVertex pv;
    pv.role = d.role[u] == Role::kReal ? PVertex::kReal : PVertex::kCrossing;
    pv.ref = u;
    for (int i = 0; i < inst.k(); ++i)
      if (inst.added[i].first == u || inst.added[i].second == u) pv.endpoint_mask |= 1u << i;
    p.of_drawing_vertex[u] = add(pv);
  }
  p.of_segment.assign(S, {});
  for (int s = 0; s < S; ++s) {
    if (inside[s]) continue;
    int x = d.segment_dart[s];
    for (int j = 0; j < sub; ++j) {
      PVertex pv;
      pv.role = PVertex::kSegment;
      pv.ref = s;
      pv.edge = d.edge_of[x];
      pv.slot = j;
      p.of_segment[s].push_back(add(pv));
    }
  }
  const int F = d.faces.NumFaces();
  p.of_face.assign(F, -1);
  for (int f = 0; f < F; ++f)
    if (hd.hole_of[f] < 0) {
      PVertex pv;
      pv.role = PVertex::kCell;
      pv.ref = f;
      p.of_face[f] = add(pv);
    }
  p.shadows_of_face.assign(F, {});
  p.corner_shadow.assign(d.map.num_darts, -1);
  p.seg_shadow.assign(S, std::vector<int>(2 * sub, -1));
  for (int f = 0; f < F; ++f) {
    if (p.of_face[f] < 0) continue;
    for (int w : d.faces.walks[f]) {
      int tail = d.Tail(w);
      if (p.v[p.of_drawing_vertex[tail]].endpoint_mask) {
        PVertex pv;
        pv.role = PVertex::kShadow;
        pv.ref = f;
        pv.anchor = p.of_drawing_vertex[tail];
        pv.corner = w;
        int id = add(pv);
        p.corner_shadow[w] = id;
        p.shadows_of_face[f].push_back(id);
      }
      int s = d.seg_of[w];
      bool canon = d.IsCanonical(w);
      for (int j = 0; j < sub; ++j) {
        int slot = canon ? j : sub - 1 - j;
        PVertex pv;
        pv.role = PVertex::kShadow;
        pv.ref = f;
        pv.anchor = p.of_segment[s][slot];
        pv.corner = w;
        int id = add(pv);
        p.seg_shadow[s][slot * 2 + (canon ? 0 : 1)] = id;
        p.shadows_of_face[f].push_back(id);
      }
    }
  }

  // stitches
  std::vector<std::vector<int>> xvert(stitches.holes.size());
  std::vector<std::vector<StitchVerts>> sv(stitches.holes.size());
  // (drawing vertex, dart) -> attached stitch vertices with their sort key
  std::map<std::pair<int, int>, std::vector<std::pair<std::pair<int, int>, int>>> attach;
  for (size_t h = 0; h < stitches.holes.size(); ++h) {
    const auto& hs = stitches.holes[h];
    for (size_t c = 0; c < hs.crossings.size(); ++c) {
      PVertex pv;
      pv.role = PVertex::kCrossing;
      pv.hole = static_cast<int>(h);
      pv.stitch_crossing = static_cast<int>(c);
      xvert[h].push_back(add(pv));
    }
    sv[h].resize(hs.threads.size());
    for (size_t t = 0; t < hs.threads.size(); ++t) {
      const auto& th = hs.threads[t];
      if (!th.embedded) continue;
      const int parts = static_cast<int>(th.crossings.size()) + 1;
      for (int j = 0; j < parts; ++j) {
        std::array<int, 2> pair{};
        for (int q = 0; q < 2; ++q) {
          PVertex pv;
          pv.role = PVertex::kSegment;
          pv.edge = th.edge;
          pv.slot = 2 * j + q;
          pv.hole = static_cast<int>(h);
          pv.thread = static_cast<int>(t);
          pair[q] = add(pv);
        }
        sv[h][t].edges.push_back(pair);
      }
      const int N = hs.endpoints_per_piece[th.a.piece];
      auto key = [&](int self, int other) { return ((self - other) % N + N) % N; };
      attach[{th.a.vertex, th.a.dart}].push_back(
          {{key(th.a.rank, th.b.rank), static_cast<int>(t)}, sv[h][t].edges.front()[0]});
      attach[{th.b.vertex, th.b.dart}].push_back(
          {{key(th.b.rank, th.a.rank), static_cast<int>(t)}, sv[h][t].edges.back()[1]});
    }
  }

  // rotations as neighbour lists
  std::vector<std::vector<int>> nb(p.NumVertices());
  for (int s = 0; s < S; ++s) {
    if (inside[s]) continue;
    int x = d.segment_dart[s];
    for (int j = 0; j < sub; ++j) {
      auto& r = nb[p.of_segment[s][j]];
      r.push_back(j + 1 < sub ? p.of_segment[s][j + 1] : p.of_drawing_vertex[d.Head(x)]);
      if (p.seg_shadow[s][2 * j + 1] >= 0) r.push_back(p.seg_shadow[s][2 * j + 1]);
      r.push_back(j > 0 ? p.of_segment[s][j - 1] : p.of_drawing_vertex[d.Tail(x)]);
      if (p.seg_shadow[s][2 * j] >= 0) r.push_back(p.seg_shadow[s][2 * j]);
    }
  }
  for (int u = 0; u < d.NumVertices(); ++u) {
    int pu = p.of_drawing_vertex[u];
    if (pu < 0) continue;
    auto& r = nb[pu];
    for (int x : d.darts_at[u]) {
      if (kept(x)) {
        int s = d.seg_of[x];
        r.push_back(d.IsCanonical(x) ? p.of_segment[s][0] : p.of_segment[s][sub - 1]);
      } else {
        auto it = attach.find({u, x});
        if (it != attach.end()) {
          auto list = it->second;
          std::sort(list.begin(), list.end());
          for (auto& [k2, w] : list) r.push_back(w);
        }
      }
      int nx = d.map.rot[x];
      if (p.corner_shadow[nx] >= 0) r.push_back(p.corner_shadow[nx]);
    }
  }
  for (int f = 0; f < F; ++f) {
    if (p.of_face[f] < 0) continue;
    auto& r = nb[p.of_face[f]];
    r.assign(p.shadows_of_face[f].rbegin(), p.shadows_of_face[f].rend());
    for (int sh : p.shadows_of_face[f]) nb[sh] = {p.v[sh].anchor, p.of_face[f]};
  }
  for (size_t h = 0; h < stitches.holes.size(); ++h) {
    const auto& hs = stitches.holes[h];
    for (size_t t = 0; t < hs.threads.size(); ++t) {
      const auto& th = hs.threads[t];
      if (!th.embedded) continue;
      const auto& es = sv[h][t].edges;
      const int ne = static_cast<int>(es.size());
      auto node = [&](int j) {  // node j on the thread: 0 = a, ne = b
        if (j == 0) return p.of_drawing_vertex[th.a.vertex];
        if (j == ne) return p.of_drawing_vertex[th.b.vertex];
        return xvert[h][th.crossings[j - 1]];
      };
      for (int j = 0; j < ne; ++j) {
        nb[es[j][0]] = {node(j), es[j][1]};
        nb[es[j][1]] = {es[j][0], node(j + 1)};
      }
    }
    for (size_t c = 0; c < hs.crossings.size(); ++c) {
      auto& r = nb[xvert[h][c]];
      for (int code : hs.crossings[c].rot_threads) {
        int t = code / 2, towards_b = code % 2;
        const auto& th = hs.threads[t];
        int j = static_cast<int>(std::find(th.crossings.begin(), th.crossings.end(),
                                           static_cast<int>(c)) - th.crossings.begin());
        r.push_back(towards_b ? sv[h][t].edges[j + 1][0] : sv[h][t].edges[j][1]);
      }
    }
  }

  // links
  for (int u = 0; u < p.NumVertices(); ++u) p.g.AddVertex();
  std::map<std::pair<int, int>, int> dart_of;
  for (int u = 0; u < p.NumVertices(); ++u) {
    std::set<int> seen;
    for (int w : nb[u]) {
      if (w < 0) throw FatalDiagnostic("patchwork neighbour missing");
      if (!seen.insert(w).second || w == u) throw FatalDiagnostic("patchwork would need a parallel link");
      if (u < w) {
        int l = p.g.AddLink(u, w);
        dart_of[{u, w}] = 2 * l;
        dart_of[{w, u}] = 2 * l + 1;
      }
    }
  }
  for (int u = 0; u < p.NumVertices(); ++u) {
    std::vector<int> r;
    for (int w : nb[u]) {
      auto it = dart_of.find({u, w});
      if (it == dart_of.end()) throw FatalDiagnostic("patchwork adjacency is not symmetric");
      r.push_back(it->second);
    }
    p.g.SetRotation(u, r);
  }
  for (int x = 0; x < 2 * p.g.NumLinks(); ++x)
    if (p.g.pos_in_rot[x] < 0) throw FatalDiagnostic("patchwork adjacency is not symmetric");
  AssignCrossableLabels(p, inst, hd, crossable);
  AssignTrackingLabels(p, inst, stitches);
  return p;
}

void AssignCrossableLabels(Patchwork& p, const InsertionInstance& inst, const HoleDecomposition& hd,
                           const std::vector<CrossableResult>& crossable) {
  const Drawing& d = inst.drawing;
  const uint32_t all = inst.k() >= 32 ? ~0u : (1u << inst.k()) - 1;
  for (auto& pv : p.v) {
    if (pv.role != PVertex::kSegment) continue;
    if (pv.ref < 0) {
      pv.crossable = 0;
      continue;
    }
    uint32_t m = all;
    int e = pv.edge, j = d.seg_index[d.segment_dart[pv.ref]];
    for (int h = 0; h < hd.NumHoles(); ++h) {
      if (!hd.Torn(h, e)) continue;
      int part = hd.PartIndex(h, e, j);
      for (int i = 0; i < inst.k(); ++i)
        if (part < 0 || !crossable[i].part_crossable[h][e][part]) m &= ~(1u << i);
    }
    pv.crossable = m;
  }
}

namespace {

// lineage key of a segment neighbour: (edge, thread or -1)
std::pair<int, int> Lineage(const PVertex& pv) { return {pv.edge, pv.thread}; }

}  // namespace

void AssignTrackingLabels(Patchwork& p, const InsertionInstance& inst, const StitchPlan& stitches) {
  (void)inst;
  for (auto& pv : p.v)
    if (pv.role == PVertex::kSegment) pv.tracking = 0;
  for (int u = 0; u < p.NumVertices(); ++u) {
    if (p.v[u].role != PVertex::kCrossing) continue;
    std::vector<int> ns;
    for (int x : p.g.rot[u]) ns.push_back(p.g.Head(x));
    if (p.v[u].ref >= 0) {
      int lo = 1 << 30;
      for (int w : ns) lo = std::min(lo, p.v[w].edge);
      for (int w : ns) p.v[w].tracking = p.v[w].edge == lo ? 1 : 2;
    } else {
      const auto& sc = stitches.holes[p.v[u].hole].crossings[p.v[u].stitch_crossing];
      const auto& th = stitches.holes[p.v[u].hole].threads;
      std::pair<int, int> k1{th[sc.t1].edge, sc.t1}, k2{th[sc.t2].edge, sc.t2};
      int first = k1 < k2 ? sc.t1 : sc.t2;
      for (int w : ns) p.v[w].tracking = p.v[w].thread == first ? 1 : 2;
    }
  }
}

Pipeline RunPipeline(const InsertionInstance& inst) {
  Pipeline pl;
  pl.dual = BuildDual(inst.drawing);
  pl.holes = ComputeHoles(inst, pl.dual);
  for (int i = 0; i < inst.k(); ++i)
    pl.crossable.push_back(CrossableParts(inst, pl.dual, pl.holes, i));
  pl.stitches = BuildStitches(inst, pl.holes, pl.crossable);
  pl.patchwork = BuildPatchwork(inst, pl.holes, pl.stitches, pl.crossable);
  return pl;
}

bool SameEdgeReachable(const Patchwork& p, int v1, int v2, int i) {
  (void)i;
  if (p.v[v1].role != PVertex::kSegment || p.v[v2].role != PVertex::kSegment) return false;
  // state: segment vertex with label 0, or crossing vertex with the entry label
  std::set<std::pair<int, int>> seen{{v1, 0}};
  std::deque<std::pair<int, int>> q{{v1, 0}};
  while (!q.empty()) {
    auto [u, lab] = q.front();
    q.pop_front();
    if (u == v2) return true;
    for (int x : p.g.rot[u]) {
      int w = p.g.Head(x);
      const auto& pw = p.v[w];
      std::pair<int, int> st;
      if (p.v[u].role == PVertex::kSegment) {
        if (pw.role == PVertex::kSegment) st = {w, 0};
        else if (pw.role == PVertex::kCrossing) st = {w, p.v[u].tracking};
        else continue;
      } else {
        if (pw.role != PVertex::kSegment || pw.tracking != lab) continue;
        st = {w, 0};
      }
      if (seen.insert(st).second) q.push_back(st);
    }
  }
  return false;
}

TrackingCheck CheckTracking(const Patchwork& p, const InsertionInstance& inst,
                            const StitchPlan& stitches) {
  (void)stitches;
  const Drawing& d = inst.drawing;
  TrackingCheck tc;
  for (int u = 0; u < p.NumVertices(); ++u) {
    const auto& pu = p.v[u];
    if (pu.role != PVertex::kCrossing) continue;
    ++tc.crossing_vertices;
    std::map<int, std::vector<std::pair<int, int>>> by_label;
    bool all_segments = true;
    for (int x : p.g.rot[u]) {
      const auto& pw = p.v[p.g.Head(x)];
      if (pw.role != PVertex::kSegment) all_segments = false;
      by_label[pw.tracking].push_back(Lineage(pw));
    }
    std::ostringstream where;
    where << "crossing vertex " << u << (pu.ref >= 0 ? " (v" + std::to_string(pu.ref) + ")" : " (stitch)");
    if (!all_segments) {
      tc.failures.push_back(where.str() + ": non-segment neighbour");
      continue;
    }
    bool interior = pu.ref < 0;
    if (pu.ref >= 0) {
      interior = true;
      for (int x : d.darts_at[pu.ref])
        if (p.of_segment[d.seg_of[x]].empty()) interior = false;
    }
    if (interior) {
      bool ok = p.g.rot[u].size() == 4 && by_label[1].size() == 2 && by_label[2].size() == 2 &&
                by_label[1][0] == by_label[1][1] && by_label[2][0] == by_label[2][1] &&
                by_label[0].empty();
      if (ok) ++tc.exact_pairs;
      else tc.failures.push_back(where.str() + ": not labelled 1,1,2,2 by lineage");
      continue;
    }
    // on a hole boundary: several threads of one edge may meet here
    bool ok = by_label[0].empty();
    for (int lab : {1, 2})
      for (auto& ln : by_label[lab])
        if (ln.first != by_label[lab][0].first) ok = false;
    if (!by_label[1].empty() && !by_label[2].empty() && by_label[1][0].first == by_label[2][0].first)
      ok = false;
    if (!ok) tc.failures.push_back(where.str() + ": same label on different edges");
  }
  return tc;
}

namespace {

std::vector<int> Eccentricities(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> ecc(n, 0), dist(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      ecc[s] = std::max(ecc[s], dist[x]);
      for (int y : adj[x])
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
    }
  }
  return ecc;
}

BigInt DiameterBound(int k, int ell, const BigInt& tb) {
  return BigInt(2 + 4 * (k - 1)) * (BigInt(4 * ell) + 8 * (tb - 1) + 4);
}

}  // namespace

nlohmann::json Diagnostics(const Patchwork& p, const InsertionInstance& inst, const Pipeline& pl) {
  using nlohmann::json;
  json out;
  int C = 0;
  auto comp = p.g.ComponentOf(&C);
  int FF = 0;
  auto face = p.g.Faces(&FF);
  std::vector<int> V(C, 0), E(C, 0);
  std::vector<std::set<int>> F(C);
  for (int u = 0; u < p.NumVertices(); ++u) ++V[comp[u]];
  for (int x = 0; x < 2 * p.g.NumLinks(); x += 2) ++E[comp[p.g.tail[x]]];
  for (int x = 0; x < 2 * p.g.NumLinks(); ++x) F[comp[p.g.tail[x]]].insert(face[x]);

  // P+: a helper in every face without a cell vertex
  std::vector<std::vector<int>> adj(p.NumVertices());
  for (int x = 0; x < 2 * p.g.NumLinks(); ++x) adj[p.g.tail[x]].push_back(p.g.Head(x));
  std::vector<std::vector<int>> on_face(FF);
  std::vector<char> has_cell(FF, 0);
  for (int x = 0; x < 2 * p.g.NumLinks(); ++x) {
    on_face[face[x]].push_back(p.g.tail[x]);
    if (p.v[p.g.tail[x]].role == PVertex::kCell) has_cell[face[x]] = 1;
  }
  std::vector<int> pcomp = comp;
  int helpers = 0;
  for (int f = 0; f < FF; ++f) {
    if (has_cell[f]) continue;
    int hv = static_cast<int>(adj.size());
    adj.emplace_back();
    pcomp.push_back(comp[on_face[f][0]]);
    std::sort(on_face[f].begin(), on_face[f].end());
    on_face[f].erase(std::unique(on_face[f].begin(), on_face[f].end()), on_face[f].end());
    for (int u : on_face[f]) {
      adj[hv].push_back(u);
      adj[u].push_back(hv);
    }
    ++helpers;
  }
  auto ecc = Eccentricities(adj);
  std::vector<int> diam(C, 0);
  for (size_t u = 0; u < adj.size(); ++u) diam[pcomp[u]] = std::max(diam[pcomp[u]], ecc[u]);

  bool euler = true;
  int diameter = 0;
  json comps = json::array();
  for (int c = 0; c < C; ++c) {
    int faces = V[c] == 1 && E[c] == 0 ? 1 : static_cast<int>(F[c].size());
    bool ok = V[c] - E[c] + faces == 2;
    euler = euler && ok;
    diameter = std::max(diameter, diam[c]);
    comps.push_back({{"vertices", V[c]}, {"links", E[c]}, {"faces", faces}, {"euler_ok", ok},
                     {"diameter_plus", diam[c]}});
  }
  out["vertices"] = p.NumVertices();
  out["links"] = p.g.NumLinks();
  out["components"] = comps;
  out["euler_ok"] = euler;
  out["helpers"] = helpers;
  out["diameter_plus"] = diameter;

  std::map<std::string, int> counts;
  int shadow_deg_bad = 0;
  for (int u = 0; u < p.NumVertices(); ++u) {
    const auto& pv = p.v[u];
    std::string key = RoleName(pv.role);
    if (pv.hole >= 0) key = "stitch_" + key;
    ++counts[key];
    if (pv.role == PVertex::kShadow && p.g.rot[u].size() != 2) ++shadow_deg_bad;
  }
  out["counts"] = counts;
  out["shadow_degree_violations"] = shadow_deg_bad;

  const int k = inst.k();
  if (k > 0) {
    const int ell = inst.MaxEffectiveBudget();
    BigInt f = CrossableBound(k, ell);
    int threads = pl.stitches.NumThreads();
    BigInt tb_loose = threads == 0 ? BigInt(1) : BigInt(k) * f;
    BigInt tb_tight = std::max(1, pl.stitches.MaxThreadsPerHole());
    BigInt loose = DiameterBound(k, ell, tb_loose);
    BigInt tight = DiameterBound(k, ell, tb_tight);
    BigInt lemma = BigInt(3) * (2 + 4 * (k - 1)) * (BigInt(4 * ell) + 8 * (BigInt(k) * f - 1));
    out["bound"] = {{"diameter_asserted", loose.str()},
                    {"diameter_with_actual_threads", tight.str()},
                    {"treewidth_lemma_form", lemma.str()}};
    out["within_bound"] = BigInt(diameter) <= loose;
    out["within_tight_bound"] = BigInt(diameter) <= tight;
    if (BigInt(diameter) > loose)
      throw FatalDiagnostic("patchwork diameter " + std::to_string(diameter) + " exceeds " + loose.str());
  }
  auto tc = CheckTracking(p, inst, pl.stitches);
  out["tracking"] = {{"crossing_vertices", tc.crossing_vertices},
                     {"exact_pairs", tc.exact_pairs},
                     {"failures", tc.failures}};
  return out;
}

nlohmann::json PatchworkToJson(const Patchwork& p) {
  using nlohmann::json;
  json vs = json::array();
  for (int u = 0; u < p.NumVertices(); ++u) {
    const auto& pv = p.v[u];
    json j{{"id", u}, {"role", RoleName(pv.role)}, {"ref", pv.ref}};
    if (pv.role == PVertex::kSegment) {
      j["edge"] = pv.edge;
      j["slot"] = pv.slot;
      j["crossable"] = pv.crossable;
      j["tracking"] = pv.tracking;
    }
    if (pv.role == PVertex::kShadow) {
      j["anchor"] = pv.anchor;
      j["corner"] = pv.corner;
    }
    if (pv.role == PVertex::kReal && pv.endpoint_mask) j["endpoint_of"] = pv.endpoint_mask;
    if (pv.hole >= 0) {
      j["hole"] = pv.hole;
      if (pv.thread >= 0) j["thread"] = pv.thread;
      if (pv.stitch_crossing >= 0) j["stitch_crossing"] = pv.stitch_crossing;
    }
    json r = json::array();
    for (int x : p.g.rot[u]) r.push_back(p.g.Head(x));
    j["rotation"] = r;
    vs.push_back(j);
  }
  return {{"k", p.k}, {"subdivision", p.subdiv}, {"vertices", vs}};
}

std::string PatchworkToDot(const Patchwork& p) {
  std::ostringstream os;
  os << "graph patchwork {\n";
  for (int u = 0; u < p.NumVertices(); ++u) {
    const auto& pv = p.v[u];
    os << "  n" << u << " [role=\"" << RoleName(pv.role) << "\"";
    if (pv.ref >= 0) os << " ref=" << pv.ref;
    if (pv.role == PVertex::kSegment)
      os << " edge=" << pv.edge << " crossableFor=" << pv.crossable << " tracking=" << pv.tracking;
    if (pv.role == PVertex::kReal && pv.endpoint_mask) os << " endpoint=" << pv.endpoint_mask;
    if (pv.hole >= 0) os << " hole=" << pv.hole;
    if (pv.thread >= 0) os << " thread=" << pv.thread;
    os << "];\n";
  }
  for (int x = 0; x < 2 * p.g.NumLinks(); x += 2)
    os << "  n" << p.g.tail[x] << " -- n" << p.g.Head(x) << ";\n";
  os << "}\n";
  return os.str();
}

std::string PatchworkToGraphml(const Patchwork& p) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
     << "  <key id=\"role\" for=\"node\" attr.name=\"role\" attr.type=\"string\"/>\n"
     << "  <key id=\"ref\" for=\"node\" attr.name=\"ref\" attr.type=\"int\"/>\n"
     << "  <key id=\"edge\" for=\"node\" attr.name=\"edge\" attr.type=\"int\"/>\n"
     << "  <key id=\"crossable\" for=\"node\" attr.name=\"crossableFor\" attr.type=\"long\"/>\n"
     << "  <key id=\"tracking\" for=\"node\" attr.name=\"tracking\" attr.type=\"int\"/>\n"
     << "  <graph id=\"P\" edgedefault=\"undirected\">\n";
  for (int u = 0; u < p.NumVertices(); ++u) {
    const auto& pv = p.v[u];
    os << "    <node id=\"n" << u << "\"><data key=\"role\">" << RoleName(pv.role)
       << "</data><data key=\"ref\">" << pv.ref << "</data>";
    if (pv.role == PVertex::kSegment)
      os << "<data key=\"edge\">" << pv.edge << "</data><data key=\"crossable\">" << pv.crossable
         << "</data><data key=\"tracking\">" << pv.tracking << "</data>";
    os << "</node>\n";
  }
  for (int x = 0; x < 2 * p.g.NumLinks(); x += 2)
    os << "    <edge source=\"n" << p.g.tail[x] << "\" target=\"n" << p.g.Head(x) << "\"/>\n";
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

}  // namespace sdx
