#include "sdx/brute_force.h"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <numeric>

#include "sdx/errors.h"

namespace sdx {

bool BruteForceWithinGuards(const InsertionInstance& inst) {
  if (inst.k() > 3 || inst.drawing.NumCrossings() > 12) return false;
  for (int b : inst.budgets)
    if (b > 3) return false;
  return true;
}

namespace {

struct Stop {};

// curve passages as (cell, key_in, key_out); keys order corners and
// crossings around the cell boundary
int64_t Key(const Drawing& d, int w, int rank, bool corner) {
  int64_t base = d.faces.index_in_walk[w] * int64_t{100};
  if (corner) return base;
  return base + 1 + (d.IsCanonical(w) ? rank : 98 - rank);
}

bool Crosses(int64_t a, int64_t b, int64_t c, int64_t e) {
  if (a == c || a == e || b == c || b == e) return false;
  auto inside = [&](int64_t x) { return std::min(a, b) < x && x < std::max(a, b); };
  return inside(c) != inside(e);
}

class Brute {
 public:
  Brute(const InsertionInstance& inst, Variant v, int64_t cap) : inst_(inst), d_(inst.drawing), v_(v), cap_(cap) {}

  std::vector<CurveTrace> Traces(int i, int ell_prime) {
    auto [s, t] = inst_.added[i];
    const int F = d_.faces.NumFaces();
    // face distance to any face with a corner at t
    std::vector<int> dist(F, 1 << 29);
    std::deque<int> q;
    for (int x = 0; x < d_.map.num_darts; ++x)
      if (d_.Tail(x) == t && dist[d_.faces.face_of[x]]) {
        dist[d_.faces.face_of[x]] = 0;
        q.push_back(d_.faces.face_of[x]);
      }
    while (!q.empty()) {
      int f = q.front();
      q.pop_front();
      for (int x : d_.faces.walks[f]) {
        int g = d_.faces.face_of[d_.map.twin[x]];
        if (dist[g] > dist[f] + 1) {
          dist[g] = dist[f] + 1;
          q.push_back(g);
        }
      }
    }
    std::vector<CurveTrace> out;
    std::vector<char> used(d_.num_edges, 0);
    CurveTrace cur;
    std::vector<std::array<int64_t, 3>> pass;
    const bool simple = IsSimpleVariant(v_);
    const bool plane = v_ == Variant::kSLPEI || v_ == Variant::kLPEI;
    auto fits = [&](int f, int64_t a, int64_t b) {
      for (auto& p : pass)
        if (p[0] == f && Crosses(a, b, p[1], p[2])) return false;
      return true;
    };
    std::function<void(int, int64_t, int)> go = [&](int f, int64_t in, int left) {
      if (++nodes_ > cap_) throw Stop{};
      if (left == 0) {
        for (int y : d_.faces.walks[f]) {
          if (d_.Tail(y) != t || !fits(f, in, Key(d_, y, 0, true))) continue;
          CurveTrace c = cur;
          c.end = y;
          c.ranks.assign(c.darts.size(), 0);
          out.push_back(std::move(c));
        }
        return;
      }
      for (int x : d_.faces.walks[f]) {
        int e = d_.edge_of[x];
        if (used[e]) continue;
        if (simple && (d_.Incident(e, s) || d_.Incident(e, t))) continue;
        if (plane && d_.edge_crossings[e] + 1 > inst_.GlobalBudget()) continue;
        int g = d_.faces.face_of[d_.map.twin[x]];
        if (dist[g] > left - 1) continue;
        int64_t out_key = Key(d_, x, 0, false);
        if (!fits(f, in, out_key)) continue;
        used[e] = 1;
        pass.push_back({f, in, out_key});
        cur.darts.push_back(x);
        cur.cells.push_back(g);
        go(g, Key(d_, d_.map.twin[x], 0, false), left - 1);
        cur.cells.pop_back();
        cur.darts.pop_back();
        pass.pop_back();
        used[e] = 0;
      }
    };
    for (int w = 0; w < d_.map.num_darts; ++w) {
      if (d_.Tail(w) != s) continue;
      int f = d_.faces.face_of[w];
      if (dist[f] > ell_prime) continue;
      cur = CurveTrace{};
      cur.start = w;
      cur.cells = {f};
      go(f, Key(d_, w, 0, true), ell_prime);
    }
    return out;
  }

  std::optional<Extension> Combine(const BudgetProfile& prof, const std::vector<std::vector<CurveTrace>>& traces) {
    const int k = inst_.k();
    std::vector<CurveTrace> chosen(k);
    std::vector<std::vector<int>> order(d_.NumSegments());
    std::optional<Extension> found;
    std::vector<int> mutual(k, 0);
    std::vector<int> hits(d_.num_edges, 0);
    const int total = std::accumulate(prof.begin(), prof.end(), 0);
    int points = 0;
    auto rank = [&](int c, int x) {
      auto& o = order[d_.seg_of[x]];
      return static_cast<int>(std::find(o.begin(), o.end(), c) - o.begin());
    };
    auto passages = [&](int c) {
      const auto& t = chosen[c];
      std::vector<std::array<int64_t, 3>> ps;
      for (size_t j = 0; j <= t.darts.size(); ++j) {
        int64_t a = j == 0 ? Key(d_, t.start, 0, true) : Key(d_, d_.map.twin[t.darts[j - 1]], rank(c, t.darts[j - 1]), false);
        int64_t b = j == t.darts.size() ? Key(d_, t.end, 0, true) : Key(d_, t.darts[j], rank(c, t.darts[j]), false);
        ps.push_back({t.cells[j], a, b});
      }
      return ps;
    };
    std::function<void(int)> place;
    std::function<void(int, size_t)> ranks;
    auto budgets_ok = [&](int upto) {
      for (int x = 0; x <= upto; ++x) {
        int n = prof[x] + mutual[x];
        if ((v_ == Variant::kSLCEI || v_ == Variant::kLCEI) && n > inst_.budgets[x]) return false;
        if ((v_ == Variant::kSLPEI || v_ == Variant::kLPEI) && n > inst_.GlobalBudget()) return false;
      }
      return v_ != Variant::kSCEI || total + points <= inst_.GlobalBudget();
    };
    auto settle = [&](int c) {
      auto mine = passages(c);
      std::vector<int> n(c, 0);
      bool ok = true;
      for (int b = 0; b < c; ++b) {
        for (auto& P : mine)
          for (auto& Q : passages(b))
            if (P[0] == Q[0] && Crosses(P[1], P[2], Q[1], Q[2])) ++n[b];
        auto A = inst_.added[b], B = inst_.added[c];
        bool share = A.first == B.first || A.first == B.second || A.second == B.first || A.second == B.second;
        if (IsSimpleVariant(v_) && (n[b] > 1 || (share && n[b]))) ok = false;
      }
      if (!ok) return;
      for (int b = 0; b < c; ++b) {
        mutual[b] += n[b];
        mutual[c] += n[b];
        points += n[b];
      }
      if (budgets_ok(c)) place(c + 1);
      for (int b = 0; b < c; ++b) {
        mutual[b] -= n[b];
        mutual[c] -= n[b];
        points -= n[b];
      }
    };
    ranks = [&](int c, size_t j) {
      if (found) return;
      if (j == chosen[c].darts.size()) {
        settle(c);
        return;
      }
      auto& o = order[d_.seg_of[chosen[c].darts[j]]];
      for (size_t q = 0; q <= o.size() && !found; ++q) {
        if (++nodes_ > cap_) throw Stop{};
        o.insert(o.begin() + q, c);
        ranks(c, j + 1);
        o.erase(o.begin() + q);
      }
    };
    place = [&](int c) {
      if (found) return;
      if (c == k) {
        Extension ext;
        for (int x = 0; x < k; ++x) {
          CurveTrace t = chosen[x];
          for (size_t j = 0; j < t.darts.size(); ++j) t.ranks[j] = rank(x, t.darts[j]);
          ext.curves.push_back(std::move(t));
        }
        ext.declared = InterleavingCrossings(ext, d_, nullptr);
        if (Verify(ext, inst_, v_).ok) found = std::move(ext);
        return;
      }
      for (const auto& t : traces[c]) {
        if (++nodes_ > cap_) throw Stop{};
        bool ok = true;
        if (v_ == Variant::kSLPEI || v_ == Variant::kLPEI)
          for (int x : t.darts) ok = ok && d_.edge_crossings[d_.edge_of[x]] + hits[d_.edge_of[x]] + 1 <= inst_.GlobalBudget();
        if (!ok) continue;
        chosen[c] = t;
        for (int x : t.darts) ++hits[d_.edge_of[x]];
        ranks(c, 0);
        for (int x : t.darts) --hits[d_.edge_of[x]];
        if (found) return;
      }
    };
    place(0);
    return found;
  }

  int64_t nodes_ = 0;

 private:
  const InsertionInstance& inst_;
  const Drawing& d_;
  Variant v_;
  int64_t cap_;
};

}  // namespace

SolveResult BruteForceSolve(const InsertionInstance& inst, Variant variant, int64_t max_nodes) {
  if (!BruteForceWithinGuards(inst))
    throw GuardTripped("brute force needs at most 12 crossings, k <= 3 and budgets <= 3");
  SolveResult res;
  Brute br(inst, variant, max_nodes);
  auto profiles = EnumerateBudgetProfiles(inst, variant);
  try {
    std::vector<std::vector<std::vector<CurveTrace>>> traces(inst.k());
    for (const auto& prof : profiles) {
      std::vector<std::vector<CurveTrace>> pick;
      for (int i = 0; i < inst.k(); ++i) {
        while (static_cast<int>(traces[i].size()) <= prof[i])
          traces[i].push_back(br.Traces(i, static_cast<int>(traces[i].size())));
        pick.push_back(traces[i][prof[i]]);
      }
      if (auto ext = br.Combine(prof, pick)) {
        res.status = SolveStatus::kFeasible;
        res.solution = std::move(ext);
        res.profile = prof;
        break;
      }
    }
  } catch (const Stop&) {
    res.status = SolveStatus::kCapExceeded;
  }
  res.nodes = br.nodes_;
  res.stats["nodes"] = res.nodes;
  return res;
}

}  // namespace sdx
