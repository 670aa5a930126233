#include <algorithm>
#include <set>

#include "doctest.h"
#include "sdx/corpus.h"
#include "sdx/dual_holes.h"
#include "test_support.h"

using namespace sdx;

namespace {

// Floyd-Warshall over the dual as read straight off face_of(twin).
std::vector<std::vector<int>> CellDistances(const Drawing& d) {
  const int F = d.faces.NumFaces();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> D(F, std::vector<int>(F, inf));
  for (int c = 0; c < F; ++c) D[c][c] = 0;
  for (int x = 0; x < d.map.num_darts; ++x) {
    int a = d.faces.face_of[x], b = d.faces.face_of[d.map.twin[x]];
    D[a][b] = std::min(D[a][b], 1);
  }
  for (int m = 0; m < F; ++m)
    for (int a = 0; a < F; ++a)
      for (int b = 0; b < F; ++b) D[a][b] = std::min(D[a][b], D[a][m] + D[m][b]);
  return D;
}

std::set<int> CellsAt(const Drawing& d, int v) {
  std::set<int> out;
  for (int f = 0; f < d.faces.NumFaces(); ++f)
    for (auto& st : BoundaryWalk(d.map, d.faces, f))
      if (st.vertex == v) out.insert(f);
  return out;
}

std::vector<char> OracleFar(const InsertionInstance& inst, int i) {
  const Drawing& d = inst.drawing;
  auto D = CellDistances(d);
  auto us = CellsAt(d, inst.added[i].first), ut = CellsAt(d, inst.added[i].second);
  std::vector<char> far(d.faces.NumFaces());
  for (int c = 0; c < d.faces.NumFaces(); ++c) {
    int ds = 1 << 20, dt = 1 << 20;
    for (int u : us) ds = std::min(ds, D[u][c]);
    for (int u : ut) dt = std::min(dt, D[u][c]);
    far[c] = ds > inst.EffectiveBudget(i) || dt > inst.EffectiveBudget(i);
  }
  return far;
}

}  // namespace

TEST_CASE("dual of triangle and single edge") {
  auto res = ValidateDrawing(testing::TriangleMap(), {Role::kReal, Role::kReal, Role::kReal},
                             {0, 0, 1, 1, 2, 2});
  auto g = BuildDual(*res.drawing);
  CHECK(g.num_cells == 2);
  CHECK(g.links.size() == 3);
  for (auto& l : g.links) CHECK(l.a != l.b);

  CombinatorialMap m;
  m.num_darts = 2;
  m.twin = {1, 0};
  m.rot = {0, 1};
  m.vertex_of = {0, 1};
  auto r2 = ValidateDrawing(m, {Role::kReal, Role::kReal}, {0, 0});
  auto g2 = BuildDual(*r2.drawing);
  CHECK(g2.num_cells == 1);
  REQUIRE(g2.links.size() == 1);
  CHECK(g2.links[0].a == g2.links[0].b);
}

TEST_CASE("dual of convex K4") {
  auto inst = IngestStraightLine(testing::ConvexK4());
  auto g = BuildDual(inst.drawing);
  CHECK(g.num_cells == 5);
  CHECK(g.links.size() == 8);
  for (int v = 0; v < 4; ++v) {
    auto oracle = CellsAt(inst.drawing, v);
    CHECK(oracle.size() == 3);
    CHECK(std::vector<int>(oracle.begin(), oracle.end()) == g.U[v]);
  }
}

TEST_CASE("far cells: huge budget gives none, nested squares core is far") {
  auto in = NestedSquares(3, false, false);
  in.added = {{9, 11}};
  in.budgets = {100};
  auto inst = IngestStraightLine(in);
  auto g = BuildDual(inst.drawing);
  auto far = FarCells(inst, g, 0);
  CHECK(std::count(far.begin(), far.end(), 1) == 0);

  inst.budgets = {1};
  far = FarCells(inst, g, 0);
  CHECK(far == OracleFar(inst, 0));
  // innermost cell: the inner face of layer 1 (left of dart 1->0)
  int core = -1;
  for (int f = 0; f < inst.drawing.faces.NumFaces(); ++f) {
    auto w = BoundaryWalk(inst.drawing.map, inst.drawing.faces, f);
    std::set<int> vs;
    for (auto& st : w) vs.insert(st.vertex);
    if (vs == std::set<int>{0, 1, 2, 3}) core = f;
  }
  REQUIRE(core >= 0);
  CHECK(far[core]);
  auto hd = ComputeHoles(inst, g);
  CHECK(hd.NumHoles() == 1);
  CHECK(hd.holes[0].cells == std::vector<int>{core});
  for (int e = 0; e < inst.drawing.num_edges; ++e) CHECK_FALSE(hd.Torn(0, e));
}

// A cell touching s_i is at distance 0 from U_s but may still be far from
// U_t; only cells touching both endpoints are guaranteed near.
TEST_CASE("cells touching both endpoints are never far") {
  for (uint64_t s = 1; s <= 40; ++s) {
    auto g = RandomInstance(7, 11, 2, static_cast<int>(s % 3), s);
    auto& inst = g.instance;
    auto dual = BuildDual(inst.drawing);
    for (int i = 0; i < inst.k(); ++i) {
      auto far = FarCells(inst, dual, i);
      CHECK(far == OracleFar(inst, i));
      auto dt = DualDistances(dual, dual.U[inst.added[i].second]);
      for (int c : dual.U[inst.added[i].first]) {
        CHECK(far[c] == (dt[c] > inst.EffectiveBudget(i)));
        if (std::binary_search(dual.U[inst.added[i].second].begin(),
                               dual.U[inst.added[i].second].end(), c))
          CHECK_FALSE(far[c]);
      }
    }
  }
}

TEST_CASE("raising a budget never grows far sets or holes") {
  for (uint64_t s = 1; s <= 30; ++s) {
    auto g = RandomInstance(8, 12, 2, 0, s);
    auto inst = g.instance;
    auto dual = BuildDual(inst.drawing);
    for (int ell = 0; ell < 3; ++ell) {
      inst.budgets = {ell, ell};
      auto lo = ComputeHoles(inst, dual);
      inst.budgets = {ell + 1, ell};
      auto hi = ComputeHoles(inst, dual);
      for (int c = 0; c < dual.num_cells; ++c) {
        CHECK((!hi.far[0][c] || lo.far[0][c]));
        CHECK((hi.hole_of[c] < 0 || lo.hole_of[c] >= 0));
      }
      // each new hole sits inside an old one
      for (auto& h : hi.holes) {
        std::set<int> owners;
        for (int c : h.cells) owners.insert(lo.hole_of[c]);
        CHECK(owners.size() == 1);
      }
    }
  }
}

TEST_CASE("holes are connected along segments and disjoint") {
  for (auto& ni : AdversarialInstances()) {
    auto inst = IngestStraightLine(ni.input);
    auto dual = BuildDual(inst.drawing);
    auto hd = ComputeHoles(inst, dual);
    std::vector<int> seen(dual.num_cells, 0);
    for (int h = 0; h < hd.NumHoles(); ++h) {
      for (int c : hd.holes[h].cells) {
        ++seen[c];
        for (int i = 0; i < inst.k(); ++i) CHECK(hd.far[i][c]);
      }
      // BFS inside the hole via the oracle matrix
      auto D = CellDistances(inst.drawing);
      std::set<int> reach{hd.holes[h].cells[0]};
      bool grew = true;
      while (grew) {
        grew = false;
        for (int a : std::set<int>(reach))
          for (int c : hd.holes[h].cells)
            if (!reach.count(c) && D[a][c] == 1) {
              reach.insert(c);
              grew = true;
            }
      }
      CHECK(reach.size() == hd.holes[h].cells.size());
      for (int e = 0; e < inst.drawing.num_edges; ++e)
        if (hd.Torn(h, e))
          for (auto& p : hd.parts[h][e]) CHECK((p.start_at_hole || p.end_at_hole));
    }
    for (int c = 0; c < dual.num_cells; ++c) CHECK(seen[c] <= 1);
  }
}

TEST_CASE("nested squares with a chord: annular hole, torn chord, swallowed spoke") {
  auto in = NestedSquares(4, true, false);
  in.added = {{1, 3}, {13, 15}};
  in.budgets = {1, 1};
  auto inst = IngestStraightLine(in);
  auto dual = BuildDual(inst.drawing);
  auto hd = ComputeHoles(inst, dual);
  REQUIRE(hd.NumHoles() == 1);
  const Drawing& d = inst.drawing;
  int chord = -1, spoke = -1;
  for (int e = 0; e < d.num_edges; ++e) {
    if (d.endpoints[e] == std::pair{16, 17}) chord = e;
    if (d.endpoints[e] == std::pair{4, 8}) spoke = e;
  }
  REQUIRE(chord >= 0);
  REQUIRE(spoke >= 0);
  CHECK(hd.Torn(0, chord));
  CHECK(hd.parts[0][chord].size() == 3);
  CHECK(hd.Swallowed(0, spoke));
  CHECK_FALSE(hd.Torn(0, spoke));
}

TEST_CASE("plane drawing with everything near: no holes") {
  auto inst = IngestStraightLine(testing::SquareWithDiagonal(1));
  auto hd = ComputeHoles(inst, BuildDual(inst.drawing));
  CHECK(hd.NumHoles() == 0);
}

TEST_CASE("adversarial corpus has 50 valid instances") {
  auto all = AdversarialInstances();
  CHECK(all.size() == 50);
  std::set<std::string> names;
  for (auto& ni : all) {
    CHECK_NOTHROW(IngestStraightLine(ni.input));
    names.insert(ni.name);
  }
  CHECK(names.size() == 50);
}
