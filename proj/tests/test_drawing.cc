#include <random>
#include <set>

#include "doctest.h"
#include "sdx/errors.h"
#include "sdx/geometry.h"
#include "sdx/json_io.h"
#include "test_support.h"

using namespace sdx;

namespace {

// Independent segment-intersection oracle (integer only, no shared code).
long long Orient(const Point& a, const Point& b, const Point& c) {
  __int128 v = (__int128)(b[0] - a[0]) * (c[1] - a[1]) -
               (__int128)(b[1] - a[1]) * (c[0] - a[0]);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int OracleCrossings(const StraightLineInput& in) {
  int c = 0;
  for (size_t e = 0; e < in.edges.size(); ++e)
    for (size_t f = e + 1; f < in.edges.size(); ++f) {
      auto [a, b] = in.edges[e];
      auto [p, q] = in.edges[f];
      if (a == p || a == q || b == p || b == q) continue;
      const auto &A = in.points[a], &B = in.points[b];
      const auto &C = in.points[p], &D = in.points[q];
      if (Orient(A, B, C) * Orient(A, B, D) < 0 &&
          Orient(C, D, A) * Orient(C, D, B) < 0)
        ++c;
    }
  return c;
}

}  // namespace

TEST_CASE("triangle is valid with two faces") {
  auto res = ValidateDrawing(testing::TriangleMap(), {Role::kReal, Role::kReal, Role::kReal},
                             {0, 0, 1, 1, 2, 2});
  REQUIRE(res.ok());
  CHECK(res.drawing->faces.NumFaces() == 2);
  for (int f = 0; f < 2; ++f)
    CHECK(BoundaryWalk(res.drawing->map, res.drawing->faces, f).size() == 3);
  CHECK(res.drawing->NumCrossings() == 0);
}

TEST_CASE("single edge has one face walking both darts") {
  CombinatorialMap m;
  m.num_darts = 2;
  m.twin = {1, 0};
  m.rot = {0, 1};
  m.vertex_of = {0, 1};
  auto res = ValidateDrawing(m, {Role::kReal, Role::kReal}, {0, 0});
  REQUIRE(res.ok());
  CHECK(res.drawing->faces.NumFaces() == 1);
  auto w = BoundaryWalk(res.drawing->map, res.drawing->faces, 0);
  REQUIRE(w.size() == 2);
  CHECK(w[0].dart != w[1].dart);
}

TEST_CASE("degree three crossing vertex is rejected") {
  // star with the center marked as a crossing
  CombinatorialMap m;
  m.num_darts = 6;
  m.twin = {1, 0, 3, 2, 5, 4};
  m.vertex_of = {0, 1, 0, 2, 0, 3};
  m.rot = {2, 1, 4, 3, 0, 5};
  auto res = ValidateDrawing(m, {Role::kCrossing, Role::kReal, Role::kReal, Role::kReal},
                             {0, 0, 1, 1, 2, 2});
  REQUIRE_FALSE(res.ok());
  bool found = false;
  for (auto& is : res.issues) found |= is.code == "crossing-degree";
  CHECK(found);
}

TEST_CASE("convex K4 planarizes to V5 E8 F5") {
  auto inst = IngestStraightLine(testing::ConvexK4());
  const Drawing& d = inst.drawing;
  CHECK(d.NumVertices() == 5);
  CHECK(d.map.num_darts == 16);
  CHECK(d.faces.NumFaces() == 5);
  CHECK(d.NumCrossings() == 1);
  // outer walk covers the four hull darts
  auto outer = BoundaryWalk(d.map, d.faces, d.faces.outer_face);
  CHECK(outer.size() == 4);
  for (auto& st : outer) CHECK(d.role[st.vertex] == Role::kReal);
}

TEST_CASE("ingest: square with both diagonals has one crossing") {
  StraightLineInput in;
  in.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  in.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}};
  auto inst = IngestStraightLine(in);
  CHECK(inst.drawing.NumCrossings() == 1);
}

TEST_CASE("ingest: concurrent segments are rejected") {
  StraightLineInput in;
  in.points = {{-2, 0}, {2, 0}, {0, -2}, {0, 2}, {-2, -2}, {2, 2}};
  in.edges = {{0, 1}, {2, 3}, {4, 5}, {0, 2}, {2, 1}, {1, 5}, {5, 3}, {3, 0}};
  CHECK_THROWS_AS(IngestStraightLine(in), InputError);
}

TEST_CASE("ingest: vertex inside a segment and collinear overlap are rejected") {
  StraightLineInput in;
  in.points = {{0, 0}, {2, 0}, {1, 0}, {1, 5}};
  in.edges = {{0, 1}, {2, 3}};
  CHECK_THROWS_AS(IngestStraightLine(in), InputError);
  in.points = {{0, 0}, {2, 0}, {1, 1}, {3, 1}, {5, 5}};
  in.edges = {{0, 1}, {2, 3}, {0, 2}, {1, 3}, {3, 4}};
  CHECK_NOTHROW(IngestStraightLine(in));
  in.points = {{0, 0}, {2, 0}, {1, 0}, {3, 0}, {0, 5}};
  in.edges = {{0, 1}, {2, 3}, {0, 4}, {3, 4}};
  CHECK_THROWS_AS(IngestStraightLine(in), InputError);
}

TEST_CASE("ingest: disconnected drawing is rejected") {
  StraightLineInput in;
  in.points = {{0, 0}, {1, 0}, {0, 3}, {1, 3}};
  in.edges = {{0, 1}, {2, 3}};
  CHECK_THROWS_AS(IngestStraightLine(in), InputError);
}

TEST_CASE("ingest: square cycle plus AC, adding BD") {
  StraightLineInput in = testing::SquareWithDiagonal(1);
  auto inst = IngestStraightLine(in);
  CHECK(inst.k() == 1);
  CHECK(inst.drawing.NumCrossings() == 0);
  in.added = {{0, 2}};
  CHECK_THROWS_AS(IngestStraightLine(in), InputError);
}

TEST_CASE("random instance is deterministic and matches the intersection oracle") {
  auto a = RandomInstance(4, 4, 1, 1, 7);
  auto b = RandomInstance(4, 4, 1, 1, 7);
  CHECK(InstanceToJson(a.instance) == InstanceToJson(b.instance));
  auto tri = RandomInstance(3, 3, 0, 0, 1);
  CHECK(tri.instance.drawing.NumCrossings() == 0);
  CHECK(tri.instance.drawing.faces.NumFaces() == 2);
  for (uint64_t s = 1; s <= 30; ++s) {
    auto g = RandomInstance(8, 12, 2, 2, s);
    CHECK(g.instance.drawing.NumCrossings() == OracleCrossings(g.input));
    // crossing vertices equal summed per-pair crossing counts
    int sum = 0;
    for (int c : g.instance.drawing.edge_crossings) sum += c;
    CHECK(sum == 2 * g.instance.drawing.NumCrossings());
  }
}

TEST_CASE("json round trip is loss free") {
  for (uint64_t s = 1; s <= 10; ++s) {
    auto g = RandomInstance(7, 10, 2, 1, s);
    Json j = InstanceToJson(g.instance);
    auto back = InstanceFromJson(Json::parse(j.dump()));
    CHECK(back.drawing.map == g.instance.drawing.map);
    CHECK(InstanceToJson(back) == j);
    // coordinate schema as well
    auto again = InstanceFromJson(StraightLineToJson(g.input));
    CHECK(again.drawing.map == g.instance.drawing.map);
  }
}

TEST_CASE("json loader reports positions") {
  Json j = InstanceToJson(IngestStraightLine(testing::ConvexK4()));
  Json bad = j;
  bad["twin"].erase(bad["twin"].begin());
  try {
    InstanceFromJson(bad);
    FAIL("expected error");
  } catch (const InputError& e) {
    CHECK(e.where() == "/twin");
  }
  bad = j;
  bad["rot"][3] = "x";
  try {
    InstanceFromJson(bad);
    FAIL("expected error");
  } catch (const InputError& e) {
    CHECK(e.where() == "/rot/3");
  }
  bad = j;
  bad["roles"][0] = "crossing";
  CHECK_THROWS_AS(InstanceFromJson(bad), InputError);
}

TEST_CASE("single-entry mutations of twin or rot are always caught") {
  std::mt19937_64 rng(99);
  for (uint64_t s = 1; s <= 20; ++s) {
    auto g = RandomInstance(6, 9, 0, 0, s);
    const Drawing& d = g.instance.drawing;
    for (int trial = 0; trial < 20; ++trial) {
      CombinatorialMap m = d.map;
      int x = static_cast<int>(rng() % m.num_darts);
      int y = static_cast<int>(rng() % m.num_darts);
      auto& arr = (trial % 2) ? m.rot : m.twin;
      if (arr[x] == y) y = (y + 1) % m.num_darts;
      arr[x] = y;
      CHECK_FALSE(ValidateDrawing(m, d.role, d.edge_of).ok());
    }
  }
}

TEST_CASE("variant names parse") {
  CHECK(ParseVariant("SLCEI") == Variant::kSLCEI);
  CHECK(ParseVariant("nonsimple-local") == Variant::kLCEI);
  CHECK_FALSE(ParseVariant("zzz").has_value());
}
