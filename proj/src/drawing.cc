#include "sdx/drawing.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "sdx/errors.h"

namespace sdx {

int Drawing::NumCrossings() const {
  int c = 0;
  for (Role r : role)
    if (r == Role::kCrossing) ++c;
  return c;
}

int Drawing::EdgeBetween(int u, int v) const {
  for (int e = 0; e < num_edges; ++e) {
    auto [a, b] = endpoints[e];
    if ((a == u && b == v) || (a == v && b == u)) return e;
  }
  return -1;
}

namespace {

void Add(std::vector<ValidationIssue>& out, const std::string& code,
         const std::string& msg) {
  out.push_back({code, msg});
}

std::string S(int x) { return std::to_string(x); }

}  // namespace

ValidationResult ValidateDrawing(const CombinatorialMap& map,
                                 const std::vector<Role>& role,
                                 const std::vector<int>& edge_of) {
  ValidationResult res;
  auto& issues = res.issues;
  for (auto& p : StructuralProblems(map)) Add(issues, "structure", p);
  if (!issues.empty()) return res;
  const int n = map.num_darts;
  const int nv = map.NumVertices();
  if (static_cast<int>(role.size()) != nv)
    Add(issues, "roles", "roles cover " + S(role.size()) + " vertices, map has " +
                             S(nv));
  if (static_cast<int>(edge_of.size()) != n)
    Add(issues, "edge-of", "edge_of must have one entry per dart");
  if (!issues.empty()) return res;

  if (CountComponents(map) != 1)
    Add(issues, "disconnected",
        "underlying graph has " + S(CountComponents(map)) + " components");
  FaceSet faces = ComputeFaces(map);
  const int euler = nv - n / 2 + faces.NumFaces();
  if (euler != 2)
    Add(issues, "euler", "V-E+F = " + S(euler) + " (V=" + S(nv) + ", E=" +
                             S(n / 2) + ", F=" + S(faces.NumFaces()) + ")");

  int num_edges = 0;
  for (int d = 0; d < n; ++d) {
    if (edge_of[d] < 0) {
      Add(issues, "edge-of", "negative edge id at dart " + S(d));
      continue;
    }
    if (edge_of[map.twin[d]] != edge_of[d])
      Add(issues, "edge-of", "darts " + S(d) + " and " + S(map.twin[d]) +
                                 " are twins with different edge ids");
    num_edges = std::max(num_edges, edge_of[d] + 1);
  }
  if (!issues.empty()) return res;
  {
    std::vector<char> used(num_edges, 0);
    for (int d = 0; d < n; ++d) used[edge_of[d]] = 1;
    for (int e = 0; e < num_edges; ++e)
      if (!used[e]) Add(issues, "edge-of", "edge id " + S(e) + " unused");
  }

  auto around = DartsAround(map);
  bool crossings_ok = true;
  for (int v = 0; v < nv; ++v) {
    if (role[v] != Role::kCrossing) continue;
    const auto& ds = around[v];
    if (ds.size() != 4) {
      Add(issues, "crossing-degree", "crossing vertex " + S(v) + " has degree " +
                                         S(ds.size()));
      crossings_ok = false;
      continue;
    }
    if (edge_of[ds[0]] != edge_of[ds[2]] || edge_of[ds[1]] != edge_of[ds[3]]) {
      Add(issues, "crossing-pairing",
          "crossing vertex " + S(v) + ": same-edge segments are not opposite");
      crossings_ok = false;
      continue;
    }
    if (edge_of[ds[0]] == edge_of[ds[1]]) {
      Add(issues, "self-crossing",
          "edge " + S(edge_of[ds[0]]) + " crosses itself at vertex " + S(v));
      crossings_ok = false;
    }
  }
  if (!issues.empty() && !crossings_ok) return res;

  // trace each edge as a path real - crossing* - real
  std::vector<std::vector<int>> start_darts(num_edges);
  for (int d = 0; d < n; ++d)
    if (role[map.vertex_of[d]] == Role::kReal)
      start_darts[edge_of[d]].push_back(d);
  std::vector<int> count_per_edge(num_edges, 0);
  for (int d = 0; d < n; ++d) ++count_per_edge[edge_of[d]];
  std::vector<std::vector<int>> seq(num_edges);
  std::vector<std::pair<int, int>> endpoints(num_edges, {-1, -1});
  for (int e = 0; e < num_edges; ++e) {
    auto& sd = start_darts[e];
    if (sd.size() != 2) {
      Add(issues, "edge-path", "edge " + S(e) + " touches real vertices " +
                                   S(sd.size()) + " times (expected 2)");
      continue;
    }
    int a = map.vertex_of[sd[0]], b = map.vertex_of[sd[1]];
    if (a == b) {
      Add(issues, "loop", "edge " + S(e) + " is a loop at vertex " + S(a));
      continue;
    }
    int d = (a < b) ? sd[0] : sd[1];
    std::vector<int> path;
    std::set<int> seen;
    bool bad = false;
    while (true) {
      if (!seen.insert(d).second || edge_of[d] != e) {
        bad = true;
        break;
      }
      path.push_back(d);
      int h = map.vertex_of[map.twin[d]];
      if (role[h] == Role::kReal) break;
      d = map.rot[map.rot[map.twin[d]]];
      if (static_cast<int>(path.size()) > n) {
        bad = true;
        break;
      }
    }
    if (bad || static_cast<int>(path.size()) * 2 != count_per_edge[e]) {
      Add(issues, "edge-path",
          "segments of edge " + S(e) + " do not form a simple path");
      continue;
    }
    seq[e] = path;
    endpoints[e] = {std::min(a, b), std::max(a, b)};
  }
  if (!issues.empty()) return res;

  // simplicity
  std::map<std::pair<int, int>, int> pair_count;
  for (int v = 0; v < nv; ++v) {
    if (role[v] != Role::kCrossing) continue;
    int e1 = edge_of[around[v][0]], e2 = edge_of[around[v][1]];
    auto key = std::minmax(e1, e2);
    int c = ++pair_count[{key.first, key.second}];
    if (c == 2)
      Add(issues, "double-crossing", "edges " + S(key.first) + " and " +
                                         S(key.second) + " cross more than once");
    auto [a1, b1] = endpoints[e1];
    auto [a2, b2] = endpoints[e2];
    if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2)
      Add(issues, "adjacent-crossing", "edges " + S(e1) + " and " + S(e2) +
                                           " share an endpoint and cross at " +
                                           S(v));
  }
  {
    std::map<std::pair<int, int>, int> by_ends;
    for (int e = 0; e < num_edges; ++e) {
      auto it = by_ends.find(endpoints[e]);
      if (it != by_ends.end())
        Add(issues, "parallel-edges",
            "edges " + S(it->second) + " and " + S(e) + " join the same vertices");
      else
        by_ends[endpoints[e]] = e;
    }
  }
  if (!issues.empty()) return res;

  Drawing dr;
  dr.map = map;
  dr.faces = std::move(faces);
  dr.role = role;
  dr.edge_of = edge_of;
  dr.num_edges = num_edges;
  dr.endpoints = endpoints;
  dr.edge_seq = seq;
  dr.seg_of.assign(n, -1);
  dr.seg_index.assign(n, -1);
  for (int e = 0; e < num_edges; ++e)
    for (int j = 0; j < static_cast<int>(seq[e].size()); ++j) {
      int d = seq[e][j];
      int s = static_cast<int>(dr.segment_dart.size());
      dr.segment_dart.push_back(d);
      dr.seg_of[d] = dr.seg_of[map.twin[d]] = s;
      dr.seg_index[d] = dr.seg_index[map.twin[d]] = j;
    }
  dr.darts_at = std::move(around);
  dr.edge_crossings.assign(num_edges, 0);
  for (int e = 0; e < num_edges; ++e)
    dr.edge_crossings[e] = static_cast<int>(seq[e].size()) - 1;
  res.drawing = std::move(dr);
  return res;
}

std::string VariantName(Variant v) {
  switch (v) {
    case Variant::kSLCEI: return "slcei";
    case Variant::kSCEI: return "scei";
    case Variant::kSLPEI: return "slpei";
    case Variant::kLPEI: return "lpei";
    case Variant::kLCEI: return "lcei";
  }
  return "?";
}

std::optional<Variant> ParseVariant(const std::string& s0) {
  std::string s;
  for (char c : s0) s.push_back(static_cast<char>(std::tolower(c)));
  if (s == "slcei") return Variant::kSLCEI;
  if (s == "scei") return Variant::kSCEI;
  if (s == "slpei" || s == "sl-pei") return Variant::kSLPEI;
  if (s == "lpei" || s == "l-pei") return Variant::kLPEI;
  if (s == "lcei" || s == "nonsimple-local") return Variant::kLCEI;
  return std::nullopt;
}

bool IsSimpleVariant(Variant v) {
  return v == Variant::kSLCEI || v == Variant::kSCEI || v == Variant::kSLPEI;
}

int InsertionInstance::GlobalBudget() const {
  int b = 0;
  for (int x : budgets) b = std::max(b, x);
  return b;
}

int InsertionInstance::EffectiveBudget(int i) const {
  if (variant == Variant::kSLCEI || variant == Variant::kLCEI) return budgets[i];
  return GlobalBudget();
}

int InsertionInstance::MaxEffectiveBudget() const {
  int b = 0;
  for (int i = 0; i < k(); ++i) b = std::max(b, EffectiveBudget(i));
  return b;
}

bool InsertionInstance::IsEndpoint(int v) const {
  for (auto [s, t] : added)
    if (s == v || t == v) return true;
  return false;
}

void CheckInstance(const InsertionInstance& inst) {
  const Drawing& dr = inst.drawing;
  if (inst.added.size() != inst.budgets.size())
    throw InputError("/budgets", "need one budget per added edge (" +
                                     S(inst.added.size()) + " added, " +
                                     S(inst.budgets.size()) + " budgets)");
  std::set<std::pair<int, int>> seen;
  for (int i = 0; i < inst.k(); ++i) {
    auto [s, t] = inst.added[i];
    std::string where = "/added/" + S(i);
    for (int v : {s, t})
      if (v < 0 || v >= dr.NumVertices() || dr.role[v] != Role::kReal)
        throw InputError(where, "endpoint " + S(v) + " is not a real vertex");
    if (s == t) throw InputError(where, "endpoints coincide");
    if (dr.EdgeBetween(s, t) >= 0)
      throw InputError(where, "pair is already an edge of the drawing");
    if (!seen.insert(std::minmax(s, t)).second)
      throw InputError(where, "duplicate added edge");
    if (inst.budgets[i] < 0)
      throw InputError("/budgets/" + S(i), "budget must be non-negative");
  }
}

}  // namespace sdx
