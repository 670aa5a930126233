#include "sdx/single_edge.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "sdx/errors.h"

namespace sdx {

bool Fit(const ColorSet& a, const ColorSet& b, int rank) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    a[i] < b[j] ? ++i : ++j;
  }
  return static_cast<int>(a.size() + b.size()) <= rank;
}

Family Convolve(const Family& a, const Family& b) {
  std::set<ColorSet> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      ColorSet u;
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(u));
      if (u.size() == x.size() + y.size()) out.insert(std::move(u));
    }
  return {out.begin(), out.end()};
}

RepFamilyParams MakeRepParams(int p, int q) {
  RepFamilyParams r{p, q, 0};
  if (p + 2 * q > 0) r.x = static_cast<double>(p) / (p + 2 * q);
  return r;
}

const char* EngineName(RepEngine e) {
  switch (e) {
    case RepEngine::kAuto: return "auto";
    case RepEngine::kExact: return "exact";
    case RepEngine::kPruned: return "pruned";
  }
  return "?";
}

namespace {

uint64_t Mix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double LogChoose(int n, int r) {
  if (r < 0 || r > n) return -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

Family Dedup(Family f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

// One member kept per sampled side S (colours drawn into S with probability x):
// an already kept member inside S if there is one, else the first. The number
// of sides makes a miss on any fitting pair (A, B) less likely than 1e-12 by
// the union bound.
Family Separate(const Family& f, int p, int q, int universe, bool* too_big) {
  const auto par = MakeRepParams(p, q);
  const double hit = std::pow(par.x, p) * std::pow(1 - par.x, q);
  const double pairs = std::log(static_cast<double>(f.size())) + LogChoose(universe - p, q) + 12 * std::log(10.0);
  const double sides = std::ceil(std::max(1.0, pairs) / hit);
  // only colours occurring in f matter to inside()
  std::vector<int> live;
  {
    std::vector<char> seen(universe, 0);
    for (const auto& a : f)
      for (int c : a)
        if (!seen[c]) seen[c] = 1, live.push_back(c);
    std::sort(live.begin(), live.end());
  }
  if (sides * static_cast<double>(f.size() + live.size()) > 2e8) {
    *too_big = true;
    return f;
  }
  *too_big = false;
  const uint64_t T = static_cast<uint64_t>(sides);
  const uint64_t cut = static_cast<uint64_t>(par.x * 18446744073709551615.0);
  std::vector<char> keep(f.size(), 0), in(universe, 0);
  std::vector<size_t> kept;
  auto inside = [&](size_t a) {
    for (int c : f[a])
      if (!in[c]) return false;
    return true;
  };
  for (uint64_t j = 0; j < T; ++j) {
    uint64_t seed = Mix(j * 0x100000001b3ULL + static_cast<uint64_t>(p) * 1315423911ULL + q);
    for (int c : live) in[c] = Mix(seed ^ static_cast<uint64_t>(c)) < cut;
    bool covered = false;
    for (size_t a : kept)
      if (inside(a)) {
        covered = true;
        break;
      }
    if (covered) continue;
    for (size_t a = 0; a < f.size(); ++a)
      if (inside(a)) {
        keep[a] = 1;
        kept.push_back(a);
        break;
      }
  }
  Family out;
  for (size_t a = 0; a < f.size(); ++a)
    if (keep[a]) out.push_back(f[a]);
  return out;
}

// q+1 pairwise disjoint members alone cover every q-set B: B meets at most q
// of them. Greedy, so it may miss such a packing.
std::optional<Family> DisjointPacking(const Family& f, int q) {
  Family pick;
  std::vector<char> used;
  for (const auto& a : f) {
    bool clash = false;
    for (int c : a) clash = clash || (c < static_cast<int>(used.size()) && used[c]);
    if (clash) continue;
    for (int c : a) {
      if (c >= static_cast<int>(used.size())) used.resize(c + 1, 0);
      used[c] = 1;
    }
    pick.push_back(a);
    if (static_cast<int>(pick.size()) == q + 1) return pick;
  }
  return std::nullopt;
}

}  // namespace

Family RepFamily(const Family& f0, int p, int q, int universe, RepEngine engine, RepStats* stats) {
  Family f = Dedup(f0);
  RepStats local;
  RepStats& st = stats ? *stats : local;
  ++st.calls;
  st.sets_in += static_cast<int64_t>(f.size());
  auto done = [&](Family out) {
    st.sets_out += static_cast<int64_t>(out.size());
    return out;
  };
  if (f.empty()) return done(f);
  if (q == 0) return done({f.front()});  // only B = {} has to be matched
  if (engine == RepEngine::kAuto)
    engine = (universe <= 20 || f.size() <= 100000) ? RepEngine::kExact : RepEngine::kPruned;
  if (engine == RepEngine::kExact || p == 0) return done(f);
  // keeping everything already meets the C(p+q, p) size guarantee
  if (static_cast<double>(f.size()) <= std::exp(LogChoose(p + q, p)) + 0.5) {
    ++st.small_calls;
    return done(f);
  }
  if (auto packed = DisjointPacking(f, q)) {
    ++st.pruned_calls;
    return done(*packed);
  }
  bool too_big = false;
  Family out = Separate(f, p, q, universe, &too_big);
  ++(too_big ? st.fallback_calls : st.pruned_calls);
  return done(out);
}

bool QRepresents(const Family& whole, const Family& part, int p, int q, int universe) {
  std::vector<int> b;
  std::function<bool(int)> rec = [&](int from) -> bool {
    if (static_cast<int>(b.size()) == q) {
      bool need = false, have = false;
      for (const auto& a : whole) need = need || Fit(a, b, p + q);
      if (!need) return true;
      for (const auto& a : part) have = have || Fit(a, b, p + q);
      return have;
    }
    for (int c = from; c < universe; ++c) {
      b.push_back(c);
      bool ok = rec(c + 1);
      b.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

ColorfulPathInstance ReduceToColorful(const InsertionInstance& inst, int ell) {
  if (inst.k() != 1) throw InputError("/added", "single-edge reduction needs exactly one added edge");
  const Drawing& d = inst.drawing;
  auto [s, t] = inst.added[0];
  ColorfulPathInstance g;
  const int F = d.faces.NumFaces(), m = d.num_edges;
  auto add = [&](ColorfulPathInstance::Kind k, int ref, int color) {
    g.kind.push_back(k);
    g.ref.push_back(ref);
    g.color.push_back(color);
    g.adj.emplace_back();
    return g.NumVertices() - 1;
  };
  auto link = [&](int a, int b) {
    if (std::find(g.adj[a].begin(), g.adj[a].end(), b) != g.adj[a].end()) return;
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  };
  const int cs = F + m, ct = F + m + 1;
  for (int f = 0; f < F; ++f) add(ColorfulPathInstance::kCell, f, f);
  for (int sg = 0; sg < d.NumSegments(); ++sg) {
    int x = d.segment_dart[sg], e = d.edge_of[x];
    int color = d.Incident(e, s) ? cs : d.Incident(e, t) ? ct : F + e;
    int v = add(ColorfulPathInstance::kSegment, sg, color);
    link(v, d.faces.face_of[x]);
    link(v, d.faces.face_of[d.map.twin[x]]);
  }
  g.s = add(ColorfulPathInstance::kMarker, s, cs);
  g.t = add(ColorfulPathInstance::kMarker, t, ct);
  for (int w : d.darts_at[s]) link(g.s, d.faces.face_of[w]);
  for (int w : d.darts_at[t]) link(g.t, d.faces.face_of[w]);
  for (auto& row : g.adj) std::sort(row.begin(), row.end());
  g.universe = F + m + 2;
  g.kappa = 2 * ell + 3;
  return g;
}

bool IsColorfulPath(const ColorfulPathInstance& cpi, const std::vector<int>& path) {
  if (path.size() < 2 || path.front() != cpi.s || path.back() != cpi.t) return false;
  if (static_cast<int>(path.size()) - 1 > cpi.kappa) return false;
  std::set<int> colors;
  for (size_t j = 0; j < path.size(); ++j) {
    if (!colors.insert(cpi.color[path[j]]).second) return false;
    if (j && !std::binary_search(cpi.adj[path[j]].begin(), cpi.adj[path[j]].end(), path[j - 1])) return false;
  }
  return true;
}

std::optional<std::vector<int>> ColorfulShortPath(const ColorfulPathInstance& cpi, RepEngine engine,
                                                  DpStats* stats, int64_t max_sets) {
  const int n = cpi.NumVertices();
  DpStats local;
  DpStats& st = stats ? *stats : local;
  // lossless pruning: a partial path must still reach t in time
  std::vector<int> dist(n, 1 << 29);
  std::deque<int> bq{cpi.t};
  dist[cpi.t] = 0;
  while (!bq.empty()) {
    int u = bq.front();
    bq.pop_front();
    for (int w : cpi.adj[u])
      if (dist[w] > dist[u] + 1) {
        dist[w] = dist[u] + 1;
        bq.push_back(w);
      }
  }
  // second lossless pruning: with r edges left after v, only colours of some
  // w != v with d(v, w) + d(w, t) <= r can clash later, so sets agreeing on
  // those colours are interchangeable
  const bool project = n <= 3000;
  std::vector<std::vector<int>> reach(project ? n : 0);
  auto Reach = [&](int v) -> const std::vector<int>& {
    if (reach[v].empty()) {
      std::vector<int> dv(n, -1);
      std::deque<int> vq{v};
      dv[v] = 0;
      while (!vq.empty()) {
        int u = vq.front();
        vq.pop_front();
        for (int w : cpi.adj[u])
          if (dv[w] < 0) {
            dv[w] = dv[u] + 1;
            vq.push_back(w);
          }
      }
      reach[v].assign(cpi.universe, 1 << 29);
      for (int w = 0; w < n; ++w)
        if (w != v && dv[w] >= 0) reach[v][cpi.color[w]] = std::min(reach[v][cpi.color[w]], dv[w] + dist[w]);
    }
    return reach[v];
  };
  // hist[j][v]: colour sets of colourful s-v paths with j edges -> predecessor
  std::vector<std::vector<std::map<ColorSet, int>>> hist;
  hist.emplace_back(n);
  hist[0][cpi.s][{cpi.color[cpi.s]}] = -1;
  int64_t held = 1;  // before pruning, so an upper bound
  for (int j = 1; j <= cpi.kappa; ++j) {
    ++st.rounds;
    std::vector<std::map<ColorSet, int>> next(n);
    const auto& cur = hist[j - 1];
    const int q = cpi.kappa + 1 - (j + 1);
    bool any = false;
    for (int v = 0; v < n; ++v) {
      if (v == cpi.s || j + dist[v] > cpi.kappa) continue;
      const int cv = cpi.color[v];
      for (int u : cpi.adj[v]) {
        if (u == cpi.t || cur[u].empty()) continue;
        // convolution with the singleton {cv}, inlined
        for (auto& [a, pred] : cur[u]) {
          auto at = std::lower_bound(a.begin(), a.end(), cv);
          if (at != a.end() && *at == cv) continue;
          ColorSet b;
          b.reserve(a.size() + 1);
          b.insert(b.end(), a.begin(), at);
          b.push_back(cv);
          b.insert(b.end(), at, a.end());
          next[v].emplace(std::move(b), u);
        }
      }
      if (next[v].empty()) continue;
      if (project && v != cpi.t) {
        const auto& rc = Reach(v);
        const int left = cpi.kappa - j;
        std::map<ColorSet, int> slim;
        std::set<ColorSet> keys;
        for (auto& [a, pred] : next[v]) {
          ColorSet key;
          for (int c : a)
            if (rc[c] <= left) key.push_back(c);
          if (keys.insert(std::move(key)).second) slim.emplace(a, pred);
        }
        st.merged += static_cast<int64_t>(next[v].size() - slim.size());
        next[v].swap(slim);
      }
      held += static_cast<int64_t>(next[v].size());
      if (max_sets > 0 && held > max_sets)
        throw GuardTripped("colourful DP holds more than " + std::to_string(max_sets) + " colour sets");
      const int64_t size = static_cast<int64_t>(next[v].size());
      const bool keep_all = q == 0 ? false
                            : engine == RepEngine::kExact ||
                                  (engine == RepEngine::kAuto && (cpi.universe <= 20 || size <= 100000));
      if (keep_all) {  // same as RepFamily's exact engine, without the copies
        ++st.rep.calls;
        st.rep.sets_in += size;
        st.rep.sets_out += size;
        st.max_family = std::max(st.max_family, size);
        any = true;
        continue;
      }
      Family all;
      for (auto& [a, pred] : next[v]) all.push_back(a);
      Family kept = RepFamily(all, j + 1, q, cpi.universe, engine, &st.rep);
      std::map<ColorSet, int> trimmed;
      for (auto& a : kept) trimmed.emplace(a, next[v].at(a));
      next[v].swap(trimmed);
      st.max_family = std::max<int64_t>(st.max_family, static_cast<int64_t>(next[v].size()));
      any = true;
    }
    hist.push_back(std::move(next));
    if (!hist[j][cpi.t].empty()) {
      std::vector<int> path{cpi.t};
      ColorSet a = hist[j][cpi.t].begin()->first;
      int v = cpi.t;
      for (int jj = j; jj > 0; --jj) {
        int u = hist[jj][v].at(a);
        a.erase(std::find(a.begin(), a.end(), cpi.color[v]));
        v = u;
        path.push_back(v);
      }
      std::reverse(path.begin(), path.end());
      if (!IsColorfulPath(cpi, path)) throw FatalDiagnostic("colourful DP backtracked to an invalid path");
      return path;
    }
    if (!any) break;
  }
  return std::nullopt;
}

std::optional<std::vector<int>> BruteForceColorful(const ColorfulPathInstance& cpi) {
  if (cpi.NumVertices() > 400 || cpi.kappa > 13)
    throw GuardTripped("colourful brute force needs at most 400 vertices and kappa <= 13");
  std::vector<int> path{cpi.s};
  std::set<int> colors{cpi.color[cpi.s]};
  std::function<bool(int, int)> dfs = [&](int v, int left) -> bool {
    if (v == cpi.t) return true;
    if (left == 0) return false;
    for (int w : cpi.adj[v]) {
      if (colors.count(cpi.color[w])) continue;
      colors.insert(cpi.color[w]);
      path.push_back(w);
      if (dfs(w, left - 1)) return true;
      path.pop_back();
      colors.erase(cpi.color[w]);
    }
    return false;
  };
  for (int len = 1; len <= cpi.kappa; ++len)
    if (dfs(cpi.s, len)) return path;
  return std::nullopt;
}

Extension PathToExtension(const ColorfulPathInstance& cpi, const InsertionInstance& inst,
                          const std::vector<int>& path) {
  const Drawing& d = inst.drawing;
  auto [s, t] = inst.added[0];
  CurveTrace c;
  for (size_t j = 1; j + 1 < path.size(); ++j) {
    int v = path[j];
    if (cpi.kind[v] == ColorfulPathInstance::kCell) {
      c.cells.push_back(cpi.ref[v]);
      continue;
    }
    int from = cpi.ref[path[j - 1]], to = cpi.ref[path[j + 1]];
    int x = d.segment_dart[cpi.ref[v]];
    if (!(d.faces.face_of[x] == from && d.faces.face_of[d.map.twin[x]] == to)) x = d.map.twin[x];
    c.darts.push_back(x);
    c.ranks.push_back(0);
  }
  auto corner = [&](int v, int f) {
    int best = -1;
    for (int w : d.darts_at[v])
      if (d.faces.face_of[w] == f && (best < 0 || w < best)) best = w;
    return best;
  };
  c.start = corner(s, c.cells.front());
  c.end = corner(t, c.cells.back());
  return Extension{{c}, {}};
}

SingleResult SolveSingle(const InsertionInstance& inst, RepEngine engine, bool oracle_check) {
  if (inst.k() != 1) throw InputError("/added", "single-edge solver needs exactly one added edge");
  SingleResult res;
  nlohmann::json rounds = nlohmann::json::array();
  for (int lp = 0; lp <= inst.budgets[0]; ++lp) {
    auto cpi = ReduceToColorful(inst, lp);
    DpStats st;
    auto path = ColorfulShortPath(cpi, engine, &st);
    nlohmann::json row = {{"ell", lp},
                          {"kappa", cpi.kappa},
                          {"found", path.has_value()},
                          {"max_family", st.max_family},
                          {"merged", st.merged},
                          {"rep_calls", st.rep.calls},
                          {"rep_pruned", st.rep.pruned_calls},
                          {"rep_fallback", st.rep.fallback_calls},
                          {"rep_small", st.rep.small_calls}};
    if (oracle_check && cpi.NumVertices() <= 400 && cpi.kappa <= 13) {
      auto bf = BruteForceColorful(cpi);
      row["oracle"] = bf.has_value();
      if (bf.has_value() != path.has_value())
        throw FatalDiagnostic("colourful DP and exhaustive search disagree at l' = " + std::to_string(lp));
    }
    rounds.push_back(row);
    if (!path) continue;
    Extension ext = PathToExtension(cpi, inst, *path);
    auto v = Verify(ext, inst, Variant::kSLCEI);
    if (!v.ok) throw FatalDiagnostic("colourful path maps to a rejected insertion: " + v.reasons.front());
    res.status = SolveStatus::kFeasible;
    res.crossings = static_cast<int>(ext.curves[0].darts.size());
    res.solution = std::move(ext);
    break;
  }
  res.stats["rounds"] = rounds;
  return res;
}

}  // namespace sdx
