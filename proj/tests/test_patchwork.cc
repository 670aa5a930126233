#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "sdx/corpus.h"
#include "sdx/patchwork.h"
#include "test_support.h"

using namespace sdx;

namespace {

InsertionInstance Seeded(uint64_t s) {
  return RandomInstance(8 + s % 5, 14 + s % 7, 1 + s % 3, s % 4, s).instance;
}

std::vector<InsertionInstance> Sample() {
  std::vector<InsertionInstance> out;
  for (auto& ni : AdversarialInstances()) out.push_back(IngestStraightLine(ni.input));
  for (uint64_t s : {47, 66, 142, 338, 362, 386, 487, 998})
    out.push_back(Seeded(s));
  for (uint64_t s = 0; s < 30; ++s) out.push_back(Seeded(s));
  return out;
}

std::map<std::string, int> Count(const Patchwork& p) {
  std::map<std::string, int> c;
  for (const auto& pv : p.v) c[std::string(pv.hole >= 0 ? "stitch_" : "") + RoleName(pv.role)]++;
  return c;
}

InsertionInstance Triangle() {
  StraightLineInput in;
  in.points = {{0, 0}, {5, 0}, {0, 5}};
  in.edges = {{0, 1}, {1, 2}, {2, 0}};
  return IngestStraightLine(in);
}

}  // namespace

TEST_CASE("triangle patchwork arithmetic") {
  auto inst = Triangle();
  auto pl = RunPipeline(inst);
  auto c = Count(pl.patchwork);
  CHECK(c["real"] == 3);
  CHECK(c["segment"] == 6);
  CHECK(c["cell"] == 2);
  // no endpoints: each face sees 3 segments with 2 slots each
  CHECK(c["shadow"] == 12);
  CHECK(pl.patchwork.NumVertices() == 23);
  auto j = Diagnostics(pl.patchwork, inst, pl);
  CHECK(j["euler_ok"] == true);
}

TEST_CASE("subdivision follows k") {
  auto base = testing::SquareWithDiagonal(1);
  auto one = IngestStraightLine(base);
  CHECK(RunPipeline(one).patchwork.subdiv == 2);
  base.points.push_back({10, 10});
  base.edges.push_back({2, 4});
  base.added.push_back({0, 4});
  base.budgets.push_back(2);
  for (int k : {2, 3}) {
    if (k == 3) {
      base.added.push_back({3, 4});
      base.budgets.push_back(2);
    }
    auto inst = IngestStraightLine(base);
    auto pl = RunPipeline(inst);
    CHECK(pl.patchwork.subdiv == k);
    for (int s = 0; s < inst.drawing.NumSegments(); ++s)
      if (!pl.patchwork.of_segment[s].empty()) CHECK(pl.patchwork.of_segment[s].size() == static_cast<size_t>(k));
  }
}

TEST_CASE("label classes match closed forms") {
  for (const auto& inst : Sample()) {
    auto pl = RunPipeline(inst);
    const auto& p = pl.patchwork;
    const Drawing& d = inst.drawing;
    const auto& hd = pl.holes;
    std::vector<char> gone(d.NumSegments(), 0);
    for (int h = 0; h < hd.NumHoles(); ++h)
      for (int s = 0; s < d.NumSegments(); ++s) gone[s] |= hd.inside[h][s];
    int kept_segments = 0;
    for (int s = 0; s < d.NumSegments(); ++s) kept_segments += !gone[s];
    int real = 0, cross = 0;
    for (int u = 0; u < d.NumVertices(); ++u) {
      bool any = false;
      for (int x : d.darts_at[u]) any |= !gone[d.seg_of[x]];
      if (!any) continue;
      (d.role[u] == Role::kReal ? real : cross)++;
    }
    int cells = 0, shadows = 0;
    for (int f = 0; f < d.faces.NumFaces(); ++f) {
      if (hd.hole_of[f] >= 0) continue;
      ++cells;
      for (int w : d.faces.walks[f]) shadows += p.subdiv + (inst.IsEndpoint(d.Tail(w)) ? 1 : 0);
    }
    int T = 0, X = 0;
    for (const auto& hs : pl.stitches.holes) {
      for (const auto& t : hs.threads) T += t.embedded;
      X += static_cast<int>(hs.crossings.size());
    }
    auto c = Count(p);
    CHECK(c["real"] == real);
    CHECK(c["crossing"] == cross);
    CHECK(c["segment"] == p.subdiv * kept_segments);
    CHECK(c["cell"] == cells);
    CHECK(c["shadow"] == shadows);
    CHECK(c["stitch_segment"] == 2 * (T + 2 * X));
    CHECK(c["stitch_crossing"] == X);
  }
}

TEST_CASE("shadows have degree two and cells list them in reverse walk order") {
  for (const auto& inst : Sample()) {
    auto pl = RunPipeline(inst);
    const auto& p = pl.patchwork;
    for (int u = 0; u < p.NumVertices(); ++u) {
      const auto& pv = p.v[u];
      if (pv.role == PVertex::kShadow) {
        REQUIRE(p.g.rot[u].size() == 2);
        std::set<int> got{p.g.Head(p.g.rot[u][0]), p.g.Head(p.g.rot[u][1])};
        CHECK(got == std::set<int>{pv.anchor, p.of_face[pv.ref]});
      }
      if (pv.role == PVertex::kCell) {
        std::vector<int> around;
        for (int x : p.g.rot[u]) around.push_back(p.g.Head(x));
        std::vector<int> walk = p.shadows_of_face[pv.ref];
        std::reverse(walk.begin(), walk.end());
        CHECK(around == walk);
        // walk order of anchors follows the face boundary
        std::vector<int> corners;
        for (int sh : p.shadows_of_face[pv.ref]) corners.push_back(p.v[sh].corner);
        CHECK(std::is_sorted(corners.begin(), corners.end(), [&](int a, int b) {
          return inst.drawing.faces.index_in_walk[a] < inst.drawing.faces.index_in_walk[b];
        }));
      }
      // nothing but stitches lives inside a hole
      if (pv.role == PVertex::kSegment && pv.ref >= 0)
        for (const auto& row : pl.holes.inside) CHECK_FALSE(row[pv.ref]);
    }
  }
}

TEST_CASE("a stitch edge becomes two segment vertices and three links") {
  auto inst = Seeded(66);
  auto pl = RunPipeline(inst);
  REQUIRE(pl.stitches.NumThreads() >= 1);
  const auto& p = pl.patchwork;
  int stitch_vertices = 0;
  for (int u = 0; u < p.NumVertices(); ++u) {
    const auto& pv = p.v[u];
    if (pv.role != PVertex::kSegment || pv.hole < 0) continue;
    ++stitch_vertices;
    REQUIRE(p.g.rot[u].size() == 2);
    CHECK(pv.crossable == 0);
    // its partner on the same stitch edge
    int partner = -1;
    for (int x : p.g.rot[u]) {
      const auto& pw = p.v[p.g.Head(x)];
      if (pw.role == PVertex::kSegment && pw.thread == pv.thread && pw.slot / 2 == pv.slot / 2)
        partner = p.g.Head(x);
    }
    CHECK(partner >= 0);
  }
  int want = 0;
  for (const auto& hs : pl.stitches.holes)
    for (const auto& th : hs.threads) want += 2 * (static_cast<int>(th.crossings.size()) + 1);
  CHECK(stitch_vertices == want);
  CHECK(want == 2);
}

TEST_CASE("crossable labels") {
  // no holes: everything is crossable for every added edge
  auto inst = IngestStraightLine(testing::SquareWithDiagonal(1));
  auto pl = RunPipeline(inst);
  REQUIRE(pl.holes.NumHoles() == 0);
  for (const auto& pv : pl.patchwork.v)
    if (pv.role == PVertex::kSegment) CHECK(pv.crossable == 1u);
  // recomputed from parts over the sample
  for (const auto& in2 : Sample()) {
    auto q = RunPipeline(in2);
    const Drawing& d = in2.drawing;
    for (const auto& pv : q.patchwork.v) {
      if (pv.role != PVertex::kSegment || pv.ref < 0) continue;
      int j = d.seg_index[d.segment_dart[pv.ref]];
      for (int i = 0; i < in2.k(); ++i) {
        bool want = true;
        for (int h = 0; h < q.holes.NumHoles(); ++h) {
          const auto& parts = q.holes.parts[h][pv.edge];
          if (parts.size() < 2) continue;
          bool on_crossable = false;
          for (size_t pi = 0; pi < parts.size(); ++pi)
            if (parts[pi].first <= j && j <= parts[pi].last && q.crossable[i].part_crossable[h][pv.edge][pi])
              on_crossable = true;
          want = want && on_crossable;
        }
        CHECK(static_cast<bool>(pv.crossable >> i & 1) == want);
      }
    }
  }
}

TEST_CASE("tracking labels at the K4 crossing") {
  auto inst = IngestStraightLine(testing::ConvexK4());
  auto pl = RunPipeline(inst);
  const auto& p = pl.patchwork;
  int cv = p.of_drawing_vertex[4];
  REQUIRE(p.v[cv].role == PVertex::kCrossing);
  std::map<int, std::set<int>> edges_by_label;
  for (int x : p.g.rot[cv]) {
    const auto& pw = p.v[p.g.Head(x)];
    edges_by_label[pw.tracking].insert(pw.edge);
  }
  CHECK(edges_by_label.size() == 2);
  CHECK(edges_by_label[1].size() == 1);
  CHECK(edges_by_label[2].size() == 1);
  CHECK(*edges_by_label[1].begin() < *edges_by_label[2].begin());
  // neighbours alternate 1,2,1,2 around the crossing
  std::vector<int> labs;
  for (int x : p.g.rot[cv]) labs.push_back(p.v[p.g.Head(x)].tracking);
  CHECK(labs[0] == labs[2]);
  CHECK(labs[1] == labs[3]);
}

TEST_CASE("tracking pairs by lineage everywhere") {
  int exact = 0;
  for (const auto& inst : Sample()) {
    auto pl = RunPipeline(inst);
    auto tc = CheckTracking(pl.patchwork, inst, pl.stitches);
    for (auto& f : tc.failures) FAIL_CHECK(f);
    exact += tc.exact_pairs;
    // stitch crossings are always exact
    for (int u = 0; u < pl.patchwork.NumVertices(); ++u) {
      const auto& pv = pl.patchwork.v[u];
      if (pv.role != PVertex::kCrossing || pv.ref >= 0) continue;
      std::multiset<int> labs;
      for (int x : pl.patchwork.g.rot[u]) labs.insert(pl.patchwork.v[pl.patchwork.g.Head(x)].tracking);
      CHECK(labs == std::multiset<int>{1, 1, 2, 2});
    }
  }
  CHECK(exact > 50);
}

TEST_CASE("same-edge reachability") {
  auto inst = IngestStraightLine(testing::ConvexK4());
  auto pl = RunPipeline(inst);
  const auto& p = pl.patchwork;
  const Drawing& d = inst.drawing;
  int s0 = d.seg_of[d.edge_seq[0][0]];
  CHECK(SameEdgeReachable(p, p.of_segment[s0][0], p.of_segment[s0][1], 0));
  // the two diagonals cross: their segments are linked only with matching labels
  int e1 = d.edge_of[d.darts_at[4][0]], e2 = d.edge_of[d.darts_at[4][1]];
  REQUIRE(d.edge_seq[e1].size() == 2);
  int a = p.of_segment[d.seg_of[d.edge_seq[e1][0]]][0];
  int b = p.of_segment[d.seg_of[d.edge_seq[e1][1]]][1];
  int c = p.of_segment[d.seg_of[d.edge_seq[e2][0]]][0];
  CHECK(SameEdgeReachable(p, a, b, 0));
  CHECK_FALSE(SameEdgeReachable(p, a, c, 0));
  // sides of the square never meet except at real vertices
  int s1 = d.seg_of[d.edge_seq[1][0]];
  CHECK_FALSE(SameEdgeReachable(p, p.of_segment[s0][0], p.of_segment[s1][0], 0));
}

TEST_CASE("same-edge reachability matches edge identity on crossable vertices") {
  int pairs = 0;
  for (const auto& inst : Sample()) {
    auto pl = RunPipeline(inst);
    const auto& p = pl.patchwork;
    for (int i = 0; i < inst.k(); ++i) {
      std::map<int, std::vector<int>> by_edge;
      for (int u = 0; u < p.NumVertices(); ++u)
        if (p.v[u].role == PVertex::kSegment && (p.v[u].crossable >> i & 1)) by_edge[p.v[u].edge].push_back(u);
      for (auto& [e, vs] : by_edge)
        for (size_t j = 1; j < vs.size(); ++j) {
          CHECK(SameEdgeReachable(p, vs[0], vs[j], i));
          ++pairs;
        }
      // and never across two edges without a crossing-free lineage
      for (auto& [e, vs] : by_edge)
        for (auto& [f, ws] : by_edge)
          if (e < f) CHECK_FALSE(SameEdgeReachable(p, vs[0], ws[0], i));
    }
  }
  CHECK(pairs > 100);
}

TEST_CASE("diagnostics: Euler, bound and determinism") {
  for (const auto& inst : Sample()) {
    auto pl = RunPipeline(inst);
    auto j = Diagnostics(pl.patchwork, inst, pl);
    CHECK(j["euler_ok"] == true);
    CHECK(j["shadow_degree_violations"] == 0);
    if (inst.k() > 0) CHECK(j["within_bound"] == true);
    auto again = RunPipeline(inst);
    CHECK(PatchworkToJson(pl.patchwork).dump() == PatchworkToJson(again.patchwork).dump());
    CHECK(PatchworkToDot(pl.patchwork) == PatchworkToDot(again.patchwork));
  }
  // no holes, k = 1, l = 1
  auto sq = IngestStraightLine(testing::SquareWithDiagonal(1));
  auto pl = RunPipeline(sq);
  auto j = Diagnostics(pl.patchwork, sq, pl);
  CHECK(j["bound"]["diameter_asserted"] == "16");
  CHECK(j["diameter_plus"].get<int>() <= 16);
  // triangle with a pendant, k = 1: P+ diameter by all-pairs BFS
  for (auto& ni : AdversarialInstances())
    if (ni.name == "triangle-pendant") {
      auto inst = IngestStraightLine(ni.input);
      auto q = RunPipeline(inst);
      CHECK(Diagnostics(q.patchwork, inst, q)["diameter_plus"].get<int>() <= 6);
    }
}

TEST_CASE("dot and graphml carry the labels") {
  auto inst = Seeded(362);
  auto pl = RunPipeline(inst);
  auto dot = PatchworkToDot(pl.patchwork);
  CHECK(dot.find("role=\"segment\"") != std::string::npos);
  CHECK(dot.find("crossableFor=") != std::string::npos);
  CHECK(dot.find("tracking=1") != std::string::npos);
  auto xml = PatchworkToGraphml(pl.patchwork);
  size_t nodes = 0;
  for (size_t q = xml.find("<node "); q != std::string::npos; q = xml.find("<node ", q + 1)) ++nodes;
  CHECK(nodes == static_cast<size_t>(pl.patchwork.NumVertices()));
}
