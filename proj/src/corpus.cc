#include "sdx/corpus.h"

#include <algorithm>
#include <map>

namespace sdx {

StraightLineInput NestedSquares(int layers, bool chord, bool diag) {
  StraightLineInput in;
  for (int r = 1; r <= layers; ++r) {
    int64_t h = 3 * r;
    in.points.push_back({-h, -h});
    in.points.push_back({h, -h});
    in.points.push_back({h, h});
    in.points.push_back({-h, h});
    int b = 4 * (r - 1);
    for (int c = 0; c < 4; ++c) in.edges.push_back({b + c, b + (c + 1) % 4});
    if (r > 1) in.edges.push_back({b - 4, b});
  }
  const int outer = 4 * (layers - 1);
  if (chord) {
    int64_t h = 3 * layers;
    int p = static_cast<int>(in.points.size());
    in.points.push_back({-h - 2, 1});
    in.points.push_back({h + 2, 2});
    in.edges.push_back({p, p + 1});
    in.edges.push_back({p, outer + 0});
    in.edges.push_back({p + 1, outer + 1});
  }
  if (diag) in.edges.push_back({0, 2});
  return in;
}

namespace {

StraightLineInput With(StraightLineInput in, std::vector<std::pair<int, int>> added,
                       std::vector<int> budgets) {
  in.added = std::move(added);
  in.budgets = std::move(budgets);
  return in;
}

StraightLineInput Make(std::vector<Point> pts, std::vector<std::pair<int, int>> edges) {
  StraightLineInput in;
  in.points = std::move(pts);
  in.edges = std::move(edges);
  return in;
}

// nx vertical and ny horizontal lines inside a frame whose boundary cycle
// runs through every line end. Returns corner ids via the map.
StraightLineInput Grid(int nx, int ny, std::map<std::string, int>& ids) {
  const int64_t W = 2 * (nx + 1), H = 2 * (ny + 1);
  StraightLineInput in;
  std::map<std::pair<int64_t, int64_t>, int> at;
  auto id = [&](int64_t x, int64_t y) {
    auto it = at.find({x, y});
    if (it != at.end()) return it->second;
    int v = static_cast<int>(in.points.size());
    in.points.push_back({x, y});
    at[{x, y}] = v;
    return v;
  };
  std::vector<int> ring;
  for (int64_t x = 0; x < W; x += 2) ring.push_back(id(x, 0));
  for (int64_t y = 0; y < H; y += 2) ring.push_back(id(W, y));
  for (int64_t x = W; x > 0; x -= 2) ring.push_back(id(x, H));
  for (int64_t y = H; y > 0; y -= 2) ring.push_back(id(0, y));
  for (size_t j = 0; j < ring.size(); ++j)
    in.edges.push_back({ring[j], ring[(j + 1) % ring.size()]});
  for (int a = 1; a <= nx; ++a) in.edges.push_back({id(2 * a, 0), id(2 * a, H)});
  for (int b = 1; b <= ny; ++b) in.edges.push_back({id(0, 2 * b), id(W, 2 * b)});
  ids["sw"] = id(0, 0);
  ids["se"] = id(W, 0);
  ids["ne"] = id(W, H);
  ids["nw"] = id(0, H);
  for (int a = 1; a <= nx; ++a) {
    ids["b" + std::to_string(a)] = id(2 * a, 0);
    ids["t" + std::to_string(a)] = id(2 * a, H);
  }
  return in;
}

}  // namespace

std::vector<NamedInstance> AdversarialInstances() {
  std::vector<NamedInstance> out;
  auto add = [&](std::string name, StraightLineInput in) {
    out.push_back({std::move(name), std::move(in)});
  };

  // nested squares: a single far core, or an annular hole between two pairs
  for (int L = 2; L <= 4; ++L)
    for (int chord = 0; chord < 2; ++chord)
      for (int diag = 0; diag < 2; ++diag) {
        auto base = NestedSquares(L, chord, diag);
        const int o = 4 * (L - 1);
        std::string tag = "nested" + std::to_string(L) + (chord ? "c" : "") + (diag ? "d" : "");
        add(tag + "-core", With(base, {{o + 1, o + 3}}, {1}));
        add(tag + "-annulus", With(base, {{1, 3}, {o + 1, o + 3}}, {chord, chord}));
      }

  // cut vertices
  auto bowtie = Make({{0, 0}, {0, 4}, {4, 2}, {8, 0}, {8, 4}},
                     {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
  auto bowtie_pendant = bowtie;
  bowtie_pendant.points.push_back({2, 2});
  bowtie_pendant.edges.push_back({2, 5});
  add("bowtie-outer", With(bowtie, {{0, 3}}, {0}));
  add("bowtie-pendant-1", With(bowtie_pendant, {{5, 3}}, {1}));
  add("bowtie-pendant-0", With(bowtie_pendant, {{5, 3}}, {0}));
  add("bowtie-parallel", With(bowtie, {{0, 3}, {1, 4}}, {0, 0}));
  add("bowtie-cross-0", With(bowtie, {{0, 4}, {1, 3}}, {0, 0}));
  add("bowtie-cross-1", With(bowtie, {{0, 4}, {1, 3}}, {1, 1}));
  auto chain = Make({{0, 0}, {0, 4}, {4, 2}, {8, 0}, {8, 4}, {12, 4}, {10, 8}},
                    {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {4, 6}, {5, 6}});
  add("chain-0", With(chain, {{0, 5}}, {0}));
  add("chain-1", With(chain, {{1, 6}}, {0}));
  auto chain_pendant = chain;
  chain_pendant.points.push_back({7, 2});
  chain_pendant.edges.push_back({3, 7});
  add("chain-pendant", With(chain_pendant, {{7, 0}}, {1}));
  add("chain-three", With(chain_pendant, {{0, 5}, {1, 6}, {7, 6}}, {1, 1, 1}));
  auto squares = Make({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {8, 4}, {8, 8}, {4, 8}},
                      {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3},
                       {2, 4}, {4, 5}, {5, 6}, {6, 2}, {2, 5}, {4, 6}});
  add("kissing-squares-0", With(squares, {{0, 5}, {3, 4}}, {0, 0}));
  add("kissing-squares-1", With(squares, {{0, 5}, {3, 4}}, {1, 1}));

  // grids: a far centre tears the middle lines
  {
    std::map<std::string, int> g;
    auto grid = Grid(3, 3, g);
    add("grid3-core", With(grid, {{g["sw"], g["ne"]}}, {1}));
    add("grid3-pair-1", With(grid, {{g["sw"], g["ne"]}, {g["se"], g["nw"]}}, {1, 1}));
    add("grid3-pair-0", With(grid, {{g["sw"], g["ne"]}, {g["se"], g["nw"]}}, {0, 0}));
    add("grid3-mid", With(grid, {{g["b1"], g["t3"]}}, {0}));
    add("grid3-three", With(grid, {{g["sw"], g["ne"]}, {g["se"], g["nw"]}, {g["b1"], g["t3"]}},
                            {1, 1, 1}));
    add("grid3-corner-top", With(grid, {{g["sw"], g["t2"]}}, {0}));
  }
  {
    std::map<std::string, int> g;
    auto grid = Grid(2, 2, g);
    add("grid2-core", With(grid, {{g["sw"], g["ne"]}}, {1}));
  }
  {
    std::map<std::string, int> g;
    auto grid = Grid(2, 3, g);
    add("grid23-pair", With(grid, {{g["sw"], g["ne"]}, {g["b1"], g["t2"]}}, {1, 2}));
  }

  // small odds and ends
  add("triangle-pendant",
      With(Make({{0, 0}, {4, 0}, {2, 4}, {2, 1}}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}}), {{3, 1}}, {0}));
  add("square-diagonal",
      With(Make({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}),
           {{1, 3}}, {0}));
  add("pentagon-fan",
      With(Make({{0, 0}, {6, 0}, {8, 5}, {3, 9}, {-2, 5}},
                {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {0, 3}}),
           {{1, 4}}, {0}));
  auto zigzag = Make({{0, 0}, {4, 4}, {4, 0}, {0, 4}}, {{0, 1}, {1, 2}, {2, 3}});
  add("zigzag-tree", With(zigzag, {{0, 3}}, {0}));
  add("zigzag-shared-end", With(zigzag, {{0, 3}, {0, 2}}, {0, 0}));
  add("nested-triangles-pendant",
      With(Make({{0, 0}, {12, 0}, {6, 12}, {4, 3}, {8, 3}, {6, 7}, {6, 4}},
                {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {3, 6}}),
           {{6, 1}}, {1}));
  return out;
}

std::vector<GeneratedInstance> SingleEdgeCorpus() {
  std::vector<GeneratedInstance> out;
  for (int j = 0; j < 300; ++j) {
    const int n = 4 + j % 5;
    const int m = std::max(n - 1, std::min(12, n * (n - 1) / 2 - 1) - (j / 5) % 3);
    out.push_back(RandomInstance(n, m, 1, j % 5, 1000 + j));
  }
  return out;
}

std::vector<GeneratedInstance> MultiEdgeCorpus() {
  std::vector<GeneratedInstance> out;
  for (int j = 0; j < 150; ++j) {
    const int k = 1 + j % 3, n = 5 + j % 4;
    const int m = std::min(n * (n - 1) / 2 - k, n + 1 + (j / 3) % 4);
    for (uint64_t attempt = 0;; ++attempt) {
      auto g = RandomInstance(n, m, k, 0, 50000 + 1000 * static_cast<uint64_t>(j) + attempt);
      if (g.instance.drawing.NumCrossings() > 10) continue;
      for (int i = 0; i < k; ++i) g.instance.budgets[i] = g.input.budgets[i] = (j + 2 * i) % 4;
      out.push_back(std::move(g));
      break;
    }
  }
  return out;
}

}  // namespace sdx
