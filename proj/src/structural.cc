#include "sdx/structural.h"

#include <deque>
#include <map>

#include "sdx/errors.h"
#include "sdx/json_io.h"

namespace sdx {

std::vector<std::string> CheckStructure(const InsertionInstance& inst, const Pipeline& pl, const Extension* solution) {
  std::vector<std::string> bad;
  const Drawing& d = inst.drawing;
  const auto& m = d.map;
  const int D = m.num_darts;
  for (int x = 0; x < D; ++x) {
    if (m.twin[x] == x || m.twin[m.twin[x]] != x) bad.push_back("twin is not a fixed-point-free involution at " + std::to_string(x));
    if (m.vertex_of[m.rot[x]] != m.vertex_of[x]) bad.push_back("rot leaves the vertex at dart " + std::to_string(x));
  }
  // re-validate from the serialized form
  try {
    auto pm = ParseMapJson(DrawingToJson(d));
    auto res = ValidateDrawing(pm.map, pm.role, pm.edge_of);
    if (!res.ok()) bad.push_back("round trip fails validation: " + res.issues.front().message);
  } catch (const InputError& e) {
    bad.push_back(std::string("round trip fails to parse: ") + e.what());
  }
  if (d.NumVertices() - D / 2 + d.faces.NumFaces() != 2) bad.push_back("Euler fails on the planarization");
  std::vector<char> seen(d.NumVertices(), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int x : d.darts_at[u]) {
      int w = d.Head(x);
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push_back(w);
      }
    }
  }
  if (reached != d.NumVertices()) bad.push_back("planarization is disconnected");

  // closed forms for the patchwork label classes
  const auto& p = pl.patchwork;
  const auto& hd = pl.holes;
  std::vector<char> gone(d.NumSegments(), 0);
  for (int h = 0; h < hd.NumHoles(); ++h)
    for (int s = 0; s < d.NumSegments(); ++s) gone[s] |= hd.inside[h][s];
  int kept = 0;
  for (int s = 0; s < d.NumSegments(); ++s) kept += !gone[s];
  std::map<std::string, int> want, got;
  for (int u = 0; u < d.NumVertices(); ++u) {
    bool any = false;
    for (int x : d.darts_at[u]) any |= !gone[d.seg_of[x]];
    if (any) ++want[d.role[u] == Role::kReal ? "real" : "crossing"];
  }
  want["segment"] = p.subdiv * kept;
  for (int f = 0; f < d.faces.NumFaces(); ++f) {
    if (hd.hole_of[f] >= 0) continue;
    ++want["cell"];
    for (int w : d.faces.walks[f]) want["shadow"] += p.subdiv + (inst.IsEndpoint(d.Tail(w)) ? 1 : 0);
  }
  int T = 0, X = 0;
  for (const auto& hs : pl.stitches.holes) {
    for (const auto& t : hs.threads) T += t.embedded;
    X += static_cast<int>(hs.crossings.size());
  }
  want["stitch_segment"] = 2 * (T + 2 * X);
  want["stitch_crossing"] = X;
  for (const auto& pv : p.v) ++got[std::string(pv.hole >= 0 ? "stitch_" : "") + RoleName(pv.role)];
  for (auto& [k, n] : want)
    if (got[k] != n) bad.push_back("patchwork has " + std::to_string(got[k]) + " " + k + " vertices, closed form " + std::to_string(n));

  for (int h = 0; h < static_cast<int>(pl.stitches.holes.size()); ++h) {
    const auto& hs = pl.stitches.holes[h];
    if (!hs.observation_violations.empty()) bad.push_back("hole " + std::to_string(h) + ": a thread ends on two boundary pieces");
    if (!hs.orientation_invariant) bad.push_back("hole " + std::to_string(h) + ": thread pairs depend on traversal direction");
    if (!hs.euler_ok) bad.push_back("hole " + std::to_string(h) + ": chord diagram fails Euler");
  }
  auto tc = CheckTracking(p, inst, pl.stitches);
  for (auto& f : tc.failures) bad.push_back("tracking: " + f);
  try {
    auto dj = Diagnostics(p, inst, pl);
    if (!dj["euler_ok"].get<bool>()) bad.push_back("patchwork fails Euler");
    if (dj["shadow_degree_violations"].get<int>() != 0) bad.push_back("shadow vertex without degree two");
  } catch (const FatalDiagnostic& e) {
    bad.push_back(e.what());
  }

  if (solution) {
    std::vector<std::string> self;
    auto inter = InterleavingCrossings(*solution, d, &self);
    for (auto& s : self) bad.push_back(s);
    if (inter.size() != solution->declared.size())
      bad.push_back("assembled insertion declares " + std::to_string(solution->declared.size()) + " crossings, interleavings give " +
                    std::to_string(inter.size()));
  }
  return bad;
}

}  // namespace sdx
