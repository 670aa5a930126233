#include "sdx/dual_holes.h"

#include <algorithm>
#include <deque>
#include <limits>

namespace sdx {

namespace {
constexpr int kInf = std::numeric_limits<int>::max() / 4;
}

DualGraph BuildDual(const Drawing& d) {
  DualGraph g;
  const auto& fs = d.faces;
  g.num_cells = fs.NumFaces();
  g.adj.assign(g.num_cells, {});
  for (int s = 0; s < d.NumSegments(); ++s) {
    int x = d.segment_dart[s];
    int a = fs.face_of[x], b = fs.face_of[d.map.twin[x]];
    g.links.push_back({a, b, s});
    g.adj[a].push_back({b, s});
    if (a != b) g.adj[b].push_back({a, s});
  }
  g.U.assign(d.NumVertices(), {});
  for (int x = 0; x < d.map.num_darts; ++x) g.U[d.map.vertex_of[x]].push_back(fs.face_of[x]);
  for (auto& u : g.U) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
  }
  return g;
}

std::vector<int> DualDistances(const DualGraph& g, const std::vector<int>& sources) {
  std::vector<int> dist(g.num_cells, kInf);
  std::deque<int> q;
  for (int c : sources)
    if (dist[c] != 0) {
      dist[c] = 0;
      q.push_back(c);
    }
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (auto [o, s] : g.adj[c])
      if (dist[o] == kInf) {
        dist[o] = dist[c] + 1;
        q.push_back(o);
      }
  }
  return dist;
}

std::vector<char> FarCells(const InsertionInstance& inst, const DualGraph& g, int i) {
  auto [s, t] = inst.added[i];
  int ell = inst.EffectiveBudget(i);
  auto ds = DualDistances(g, g.U[s]);
  auto dt = DualDistances(g, g.U[t]);
  std::vector<char> far(g.num_cells, 0);
  for (int c = 0; c < g.num_cells; ++c) far[c] = ds[c] > ell || dt[c] > ell;
  return far;
}

int HoleDecomposition::PartIndex(int h, int edge, int j) const {
  const auto& ps = parts[h][edge];
  for (int p = 0; p < static_cast<int>(ps.size()); ++p)
    if (ps[p].first <= j && j <= ps[p].last) return p;
  return -1;
}

HoleDecomposition ComputeHoles(const InsertionInstance& inst, const DualGraph& g) {
  const Drawing& d = inst.drawing;
  HoleDecomposition hd;
  const int k = inst.k();
  for (int i = 0; i < k; ++i) hd.far.push_back(FarCells(inst, g, i));
  std::vector<char> global(g.num_cells, k > 0);
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < g.num_cells; ++c) global[c] = global[c] && hd.far[i][c];

  // components glued along segments only
  hd.hole_of.assign(g.num_cells, -1);
  for (int c0 = 0; c0 < g.num_cells; ++c0) {
    if (!global[c0] || hd.hole_of[c0] >= 0) continue;
    int h = hd.NumHoles();
    hd.holes.emplace_back();
    std::deque<int> q{c0};
    hd.hole_of[c0] = h;
    while (!q.empty()) {
      int c = q.front();
      q.pop_front();
      hd.holes[h].cells.push_back(c);
      for (auto [o, s] : g.adj[c])
        if (global[o] && hd.hole_of[o] < 0) {
          hd.hole_of[o] = h;
          q.push_back(o);
        }
    }
    std::sort(hd.holes[h].cells.begin(), hd.holes[h].cells.end());
  }
  for (int x = 0; x < d.map.num_darts; ++x) {
    int h = hd.hole_of[d.faces.face_of[x]];
    if (h >= 0 && hd.hole_of[d.faces.face_of[d.map.twin[x]]] != h)
      hd.holes[h].boundary_darts.push_back(x);
  }

  for (int h = 0; h < hd.NumHoles(); ++h) {
    std::vector<char> in(d.NumSegments(), 0);
    for (auto& l : g.links) in[l.segment] = hd.hole_of[l.a] == h && hd.hole_of[l.b] == h;
    std::vector<std::vector<EdgePart>> per_edge(d.num_edges);
    for (int e = 0; e < d.num_edges; ++e) {
      const auto& seq = d.edge_seq[e];
      const int len = static_cast<int>(seq.size());
      int j = 0;
      while (j < len) {
        if (in[d.seg_of[seq[j]]]) {
          ++j;
          continue;
        }
        EdgePart p;
        p.edge = e;
        p.first = j;
        while (j + 1 < len && !in[d.seg_of[seq[j + 1]]]) ++j;
        p.last = j;
        p.start_at_hole = p.first > 0;
        p.end_at_hole = p.last < len - 1;
        per_edge[e].push_back(p);
        ++j;
      }
    }
    hd.inside.push_back(std::move(in));
    hd.parts.push_back(std::move(per_edge));
  }
  return hd;
}

nlohmann::json HolesReport(const InsertionInstance& inst, const HoleDecomposition& hd) {
  nlohmann::json j;
  nlohmann::json far = nlohmann::json::array();
  for (int i = 0; i < inst.k(); ++i)
    far.push_back(std::count(hd.far[i].begin(), hd.far[i].end(), 1));
  j["far_cells"] = far;
  j["holes"] = hd.NumHoles();
  nlohmann::json hs = nlohmann::json::array();
  for (int h = 0; h < hd.NumHoles(); ++h) {
    nlohmann::json x;
    x["cells"] = hd.holes[h].cells;
    x["boundary_darts"] = hd.holes[h].boundary_darts.size();
    int torn = 0, swallowed = 0, parts = 0;
    nlohmann::json torn_edges = nlohmann::json::array();
    for (int e = 0; e < inst.drawing.num_edges; ++e) {
      if (hd.Torn(h, e)) {
        ++torn;
        parts += static_cast<int>(hd.parts[h][e].size());
        nlohmann::json te;
        te["edge"] = e;
        nlohmann::json ps = nlohmann::json::array();
        for (auto& p : hd.parts[h][e]) ps.push_back({p.first, p.last});
        te["parts"] = ps;
        torn_edges.push_back(te);
      }
      if (hd.Swallowed(h, e)) ++swallowed;
    }
    x["torn_edges"] = torn;
    x["torn_parts"] = parts;
    x["swallowed_edges"] = swallowed;
    x["torn"] = torn_edges;
    hs.push_back(x);
  }
  j["hole_list"] = hs;
  return j;
}

}  // namespace sdx
