#include "sdx/solver.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "sdx/brute_force.h"
#include "sdx/errors.h"

namespace sdx {

const char* StatusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kCapExceeded: return "cap-exceeded";
  }
  return "?";
}

std::vector<BudgetProfile> EnumerateBudgetProfiles(const InsertionInstance& inst, Variant variant) {
  const int k = inst.k();
  auto eff = [&](int i) {
    return variant == Variant::kSLCEI || variant == Variant::kLCEI ? inst.budgets[i] : inst.GlobalBudget();
  };
  std::vector<BudgetProfile> out;
  BudgetProfile cur(k, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (int x = 0; x <= eff(i); ++x) {
      cur[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  if (variant == Variant::kSCEI) {
    const int ell = inst.GlobalBudget();
    std::erase_if(out, [&](const BudgetProfile& p) { return std::accumulate(p.begin(), p.end(), 0) > ell; });
  }
  std::stable_sort(out.begin(), out.end(), [](const BudgetProfile& a, const BudgetProfile& b) {
    int sa = std::accumulate(a.begin(), a.end(), 0), sb = std::accumulate(b.begin(), b.end(), 0);
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return out;
}

namespace {

struct CapHit {};

bool Interleave(int64_t a, int64_t b, int64_t c, int64_t e) {
  if (a == c || a == e || b == c || b == e) return false;
  if (a > b) std::swap(a, b);
  return (a < c && c < b) != (a < e && e < b);
}

bool ShareEndpoint(const std::pair<int, int>& A, const std::pair<int, int>& B) {
  return A.first == B.first || A.first == B.second || A.second == B.first || A.second == B.second;
}

int Side(const Drawing& d, int w) { return d.IsCanonical(w) ? 0 : 1; }

// Position of shadow h inside its cell's walk-ordered shadow list.
std::vector<int> ShadowPositions(const Patchwork& p) {
  std::vector<int> pos(p.NumVertices(), -1);
  for (const auto& list : p.shadows_of_face)
    for (int j = 0; j < static_cast<int>(list.size()); ++j) pos[list[j]] = j;
  return pos;
}

class WalkEnumerator {
 public:
  WalkEnumerator(const Pipeline& pl, const InsertionInstance& inst, Variant variant, int i,
                 std::map<std::pair<int, int>, bool>* same_edge_cache, int64_t cap)
      : p_(pl.patchwork), d_(inst.drawing), inst_(inst), variant_(variant), i_(i),
        cache_(same_edge_cache), cap_(cap), pos_(ShadowPositions(p_)) {}

  std::vector<PWalk> Run(int ell_prime) {
    std::vector<PWalk> out;
    auto [s, t] = inst_.added[i_];
    ps_ = p_.of_drawing_vertex[s];
    pt_ = p_.of_drawing_vertex[t];
    if (ps_ < 0 || pt_ < 0) return out;
    Distances();
    used_.assign(d_.num_edges, 0);
    std::vector<int> starts;
    for (int w : d_.darts_at[s])
      if (p_.corner_shadow[w] >= 0) starts.push_back(w);
    std::sort(starts.begin(), starts.end());
    for (int w : starts) {
      int f = d_.faces.face_of[w];
      if (dist_[f] > ell_prime) continue;
      int sh = p_.corner_shadow[w];
      verts_ = {ps_, sh, p_.of_face[f]};
      segs_.clear();
      passages_.clear();
      Go(f, pos_[sh], ell_prime, out);
    }
    return out;
  }

 private:
  bool Allowed(int sh, bool check_used = true) const {
    const auto& ph = p_.v[sh];
    const auto& an = p_.v[ph.anchor];
    if (an.role != PVertex::kSegment || an.slot != 0 || an.hole >= 0) return false;
    if (!(an.crossable >> i_ & 1u)) return false;
    const int e = an.edge;
    if (check_used && used_[e]) return false;
    auto [s, t] = inst_.added[i_];
    if (IsSimpleVariant(variant_) && (d_.Incident(e, s) || d_.Incident(e, t))) return false;
    if ((variant_ == Variant::kSLPEI || variant_ == Variant::kLPEI) &&
        d_.edge_crossings[e] + 1 > inst_.GlobalBudget())
      return false;
    const int other = p_.SegmentShadow(an.ref, 0, 1 - Side(d_, ph.corner));
    return other >= 0;
  }

  void Distances() {
    const int F = d_.faces.NumFaces();
    dist_.assign(F, 1 << 29);
    std::deque<int> q;
    for (int w : d_.darts_at[inst_.added[i_].second])
      if (p_.corner_shadow[w] >= 0) {
        int f = d_.faces.face_of[w];
        if (dist_[f] != 0) {
          dist_[f] = 0;
          q.push_back(f);
        }
      }
    used_.assign(d_.num_edges, 0);
    while (!q.empty()) {
      int f = q.front();
      q.pop_front();
      for (int sh : p_.shadows_of_face[f]) {
        if (!Allowed(sh)) continue;
        int g = d_.faces.face_of[d_.map.twin[p_.v[sh].corner]];
        if (dist_[g] > dist_[f] + 1) {
          dist_[g] = dist_[f] + 1;
          q.push_back(g);
        }
      }
    }
  }

  bool SelfOk(int f, int a, int b) const {
    for (auto [g, x, y] : passages_)
      if (g == f && Interleave(a, b, x, y)) return false;
    return true;
  }

  void CrossCheckSameEdge(int seg_vertex) {
    for (int u : segs_) {
      auto key = std::minmax(u, seg_vertex);
      auto it = cache_->find(key);
      bool r;
      if (it == cache_->end()) {
        r = SameEdgeReachable(p_, key.first, key.second, i_);
        cache_->emplace(key, r);
      } else {
        r = it->second;
      }
      if (r != (p_.v[u].edge == p_.v[seg_vertex].edge))
        throw FatalDiagnostic("same-edge reachability disagrees with edge identity for P vertices " +
                              std::to_string(u) + ", " + std::to_string(seg_vertex));
    }
  }

  void Go(int f, int in_pos, int left, std::vector<PWalk>& out) {
    if (++nodes_ > cap_) throw CapHit{};
    if (left == 0) {
      for (int sh : p_.shadows_of_face[f]) {
        if (p_.v[sh].anchor != pt_) continue;
        if (!SelfOk(f, in_pos, pos_[sh])) continue;
        PWalk w{verts_};
        w.verts.push_back(sh);
        w.verts.push_back(pt_);
        out.push_back(std::move(w));
      }
      return;
    }
    for (int sh : p_.shadows_of_face[f]) {
      if (!Allowed(sh, false)) continue;
      // identity decides the repeat; reachability over tracking labels must agree
      CrossCheckSameEdge(p_.v[sh].anchor);
      if (used_[p_.v[p_.v[sh].anchor].edge]) continue;
      const auto& ph = p_.v[sh];
      int x = ph.corner;
      int g = d_.faces.face_of[d_.map.twin[x]];
      if (dist_[g] > left - 1) continue;
      if (!SelfOk(f, in_pos, pos_[sh])) continue;
      int seg = ph.anchor;
      int exit = p_.SegmentShadow(p_.v[seg].ref, 0, 1 - Side(d_, x));
      passages_.push_back({f, in_pos, pos_[sh]});
      segs_.push_back(seg);
      used_[p_.v[seg].edge] = 1;
      size_t mark = verts_.size();
      verts_.insert(verts_.end(), {sh, seg, exit, p_.of_face[g]});
      Go(g, pos_[exit], left - 1, out);
      verts_.resize(mark);
      used_[p_.v[seg].edge] = 0;
      segs_.pop_back();
      passages_.pop_back();
    }
  }

  const Patchwork& p_;
  const Drawing& d_;
  const InsertionInstance& inst_;
  Variant variant_;
  int i_;
  std::map<std::pair<int, int>, bool>* cache_;
  int64_t cap_, nodes_ = 0;
  std::vector<int> pos_;
  int ps_ = -1, pt_ = -1;
  std::vector<int> dist_;
  std::vector<char> used_;
  std::vector<int> verts_, segs_;
  std::vector<std::array<int, 3>> passages_;
};

// drawing-side view of a P walk
CurveTrace TraceOf(const Patchwork& p, const PWalk& w) {
  CurveTrace t;
  const int m = (static_cast<int>(w.verts.size()) - 5) / 4;
  t.start = p.v[w.verts[1]].corner;
  t.end = p.v[w.verts[3 + 4 * m]].corner;
  for (int j = 0; j <= m; ++j) t.cells.push_back(p.v[w.verts[2 + 4 * j]].ref);
  for (int j = 0; j < m; ++j) t.darts.push_back(p.v[w.verts[3 + 4 * j]].corner);
  t.ranks.assign(m, 0);
  return t;
}

int64_t CornerKey(const Drawing& d, int w) { return d.faces.index_in_walk[w] * int64_t{64}; }
int64_t CrossKey(const Drawing& d, int w, int rank) {
  return d.faces.index_in_walk[w] * int64_t{64} + 1 + (d.IsCanonical(w) ? rank : 62 - rank);
}

}  // namespace

std::vector<PWalk> EnumerateWalks(const Pipeline& pl, const InsertionInstance& inst, Variant variant, int i,
                                  int ell_prime, int64_t cap) {
  std::map<std::pair<int, int>, bool> cache;
  WalkEnumerator we(pl, inst, variant, i, &cache, cap);
  try {
    return we.Run(ell_prime);
  } catch (const CapHit&) {
    throw GuardTripped("walk enumeration exceeded " + std::to_string(cap) + " nodes");
  }
}

bool CheckPreimageShape(const Pipeline& pl, const InsertionInstance& inst, const Preimage& pre, std::string* why) {
  const Patchwork& p = pl.patchwork;
  auto bad = [&](std::string s) {
    if (why) *why = std::move(s);
    return false;
  };
  if (static_cast<int>(pre.walks.size()) != inst.k()) return bad("wrong number of walks");
  auto adjacent = [&](int a, int b) {
    for (int x : p.g.rot[a])
      if (p.g.Head(x) == b) return true;
    return false;
  };
  std::map<int, int> owner;  // non-shareable vertex -> walk
  for (int c = 0; c < inst.k(); ++c) {
    const auto& vs = pre.walks[c].verts;
    const int n = static_cast<int>(vs.size());
    if (n < 5 || (n - 5) % 4) return bad("walk " + std::to_string(c) + " has length " + std::to_string(n));
    auto [s, t] = inst.added[c];
    if (vs.front() != p.of_drawing_vertex[s] || vs.back() != p.of_drawing_vertex[t])
      return bad("walk " + std::to_string(c) + " does not join its endpoints");
    std::set<int> edges;
    for (int j = 1; j + 1 < n; ++j) {
      const auto& pv = p.v[vs[j]];
      PVertex::Role want = (j % 2 == 1) ? PVertex::kShadow : ((j % 4 == 2) ? PVertex::kCell : PVertex::kSegment);
      if (pv.role != want) return bad("walk " + std::to_string(c) + " breaks the label pattern at " + std::to_string(j));
      if (want == PVertex::kSegment) {
        if (!(pv.crossable >> c & 1u)) return bad("walk " + std::to_string(c) + " crosses a segment not crossable for it");
        if (!edges.insert(pv.edge).second) return bad("walk " + std::to_string(c) + " meets edge " + std::to_string(pv.edge) + " twice");
      }
      bool corner = want == PVertex::kShadow && p.v[pv.anchor].role == PVertex::kReal;
      if (want != PVertex::kCell && !corner) {
        auto [it, fresh] = owner.emplace(vs[j], c);
        if (!fresh && it->second != c) return bad("walks " + std::to_string(it->second) + " and " + std::to_string(c) + " share a vertex");
      }
    }
    for (int j = 0; j + 1 < n; ++j)
      if (!adjacent(vs[j], vs[j + 1])) return bad("walk " + std::to_string(c) + " leaves P at step " + std::to_string(j));
  }
  return true;
}

Extension Assemble(const Pipeline& pl, const InsertionInstance& inst, const Preimage& pre) {
  const Patchwork& p = pl.patchwork;
  Extension ext;
  std::map<int, std::vector<int>> slots_on;  // segment -> slots used
  for (const auto& w : pre.walks) {
    const int m = (static_cast<int>(w.verts.size()) - 5) / 4;
    for (int j = 0; j < m; ++j) {
      const auto& sv = p.v[w.verts[4 + 4 * j]];
      slots_on[sv.ref].push_back(sv.slot);
    }
  }
  for (auto& [s, v] : slots_on) std::sort(v.begin(), v.end());
  for (const auto& w : pre.walks) {
    CurveTrace t = TraceOf(p, w);
    for (size_t j = 0; j < t.darts.size(); ++j) {
      const auto& sv = p.v[w.verts[4 + 4 * j]];
      const auto& v = slots_on[sv.ref];
      t.ranks[j] = static_cast<int>(std::lower_bound(v.begin(), v.end(), sv.slot) - v.begin());
    }
    ext.curves.push_back(std::move(t));
  }
  // beta': cyclic order at each cell vertex, straight from P's rotation
  struct Pass {
    int curve, pass, cellv, a, b;
  };
  std::map<int, std::unordered_map<int, int>> rot_index;
  auto idx = [&](int cellv, int sh) {
    auto& m = rot_index[cellv];
    if (m.empty())
      for (int q = 0; q < static_cast<int>(p.g.rot[cellv].size()); ++q) m[p.g.Head(p.g.rot[cellv][q])] = q;
    return m.at(sh);
  };
  std::vector<Pass> ps;
  for (int c = 0; c < static_cast<int>(pre.walks.size()); ++c) {
    const auto& vs = pre.walks[c].verts;
    const int m = (static_cast<int>(vs.size()) - 5) / 4;
    for (int j = 0; j <= m; ++j) {
      int cellv = vs[2 + 4 * j];
      ps.push_back({c, j, cellv, idx(cellv, vs[1 + 4 * j]), idx(cellv, vs[3 + 4 * j])});
    }
  }
  for (size_t x = 0; x < ps.size(); ++x)
    for (size_t y = x + 1; y < ps.size(); ++y) {
      const auto &P = ps[x], &Q = ps[y];
      if (P.curve == Q.curve || P.cellv != Q.cellv || !Interleave(P.a, P.b, Q.a, Q.b)) continue;
      ext.declared.push_back({P.curve, Q.curve, p.v[P.cellv].ref, P.pass, Q.pass});
    }
  std::sort(ext.declared.begin(), ext.declared.end());
  (void)inst;
  return ext;
}

// ---- template traces ----

namespace {

std::vector<int> Rgs(const std::vector<int>& xs) {
  std::map<int, int> id;
  std::vector<int> out;
  for (int x : xs) out.push_back(id.emplace(x, static_cast<int>(id.size())).first->second);
  return out;
}

std::string Join(const std::vector<int>& v) {
  std::string s;
  for (size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + std::to_string(v[j]);
  return s;
}

// labels of the 2 shadow uses of passage (c, j) with m crossings
std::string ShadowLabel(int c, int j, int m, bool exit, const std::vector<int>& corner_class) {
  if (!exit && j == 0) return "K" + std::to_string(corner_class[2 * c]);
  if (exit && j == m) return "K" + std::to_string(corner_class[2 * c + 1]);
  // entry of passage j is the far side of crossing j-1, exit the near side of crossing j
  return exit ? "X" + std::to_string(c) + "." + std::to_string(j) + ".0"
              : "X" + std::to_string(c) + "." + std::to_string(j - 1) + ".1";
}

std::string KeyString(const std::vector<int>& ends, const std::vector<int>& cells, const std::vector<int>& corners,
                      const std::vector<std::vector<std::string>>& beta) {
  std::string k = "E" + Join(ends) + "|C" + Join(cells) + "|K" + Join(corners) + "|B";
  for (const auto& b : beta) {
    k += "[";
    for (size_t j = 0; j < b.size(); ++j) k += (j ? " " : "") + b[j];
    k += "]";
  }
  return k;
}

void ForEachRgs(int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int j, int mx) {
    if (j == n) {
      f(a);
      return;
    }
    for (int x = 0; x <= mx + 1; ++x) {
      a[j] = x;
      rec(j + 1, std::max(mx, x));
    }
  };
  rec(0, -1);
}

}  // namespace

TemplateSet EnumerateTemplateTraces(int k, const BudgetProfile& profile) {
  const int total = std::accumulate(profile.begin(), profile.end(), 0);
  if (k > 2 || total > 2 || static_cast<int>(profile.size()) != k)
    throw GuardTripped("template enumeration is limited to k <= 2 and total profile <= 2");
  TemplateSet out;
  std::vector<int> first_cell(k);
  int ncells = 0;
  for (int c = 0; c < k; ++c) {
    first_cell[c] = ncells;
    ncells += profile[c] + 1;
  }
  ForEachRgs(2 * k, [&](const std::vector<int>& ends) {
    for (int c = 0; c < k; ++c)
      if (ends[2 * c] == ends[2 * c + 1]) return;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (std::minmax(ends[2 * a], ends[2 * a + 1]) == std::minmax(ends[2 * b], ends[2 * b + 1])) return;
    ForEachRgs(ncells, [&](const std::vector<int>& cells) {
      auto corner_cell = [&](int q) {
        int c = q / 2;
        return cells[q % 2 == 0 ? first_cell[c] : first_cell[c] + profile[c]];
      };
      ForEachRgs(2 * k, [&](const std::vector<int>& corners) {
        std::map<int, int> rep;
        for (int q = 0; q < 2 * k; ++q) {
          auto [it, fresh] = rep.emplace(corners[q], q);
          if (!fresh && (ends[it->second] != ends[q] || corner_cell(it->second) != corner_cell(q))) return;
        }
        const int ncls = *std::max_element(cells.begin(), cells.end()) + 1;
        std::vector<std::vector<std::string>> labels(ncls);
        for (int c = 0; c < k; ++c)
          for (int j = 0; j <= profile[c]; ++j) {
            auto& L = labels[cells[first_cell[c] + j]];
            for (bool ex : {false, true}) {
              auto s = ShadowLabel(c, j, profile[c], ex, corners);
              if (std::find(L.begin(), L.end(), s) == L.end()) L.push_back(s);
            }
          }
        for (auto& L : labels) std::sort(L.begin(), L.end());
        // cyclic orders: smallest label first, the rest permuted
        std::vector<std::vector<std::string>> beta(ncls);
        std::function<void(int)> rec = [&](int cl) {
          if (cl == ncls) {
            out.keys.insert(KeyString(ends, cells, corners, beta));
            return;
          }
          std::vector<std::string> rest(labels[cl].begin() + 1, labels[cl].end());
          do {
            beta[cl] = {labels[cl][0]};
            beta[cl].insert(beta[cl].end(), rest.begin(), rest.end());
            rec(cl + 1);
          } while (std::next_permutation(rest.begin(), rest.end()));
        };
        rec(0);
      });
    });
  });
  return out;
}

TemplateKey TemplateOf(const Pipeline& pl, const InsertionInstance& inst, const Preimage& pre) {
  const Patchwork& p = pl.patchwork;
  const int k = inst.k();
  std::vector<int> ends, cellv, cornerv;
  std::vector<int> m(k);
  for (int c = 0; c < k; ++c) {
    ends.push_back(inst.added[c].first);
    ends.push_back(inst.added[c].second);
    const auto& vs = pre.walks[c].verts;
    m[c] = (static_cast<int>(vs.size()) - 5) / 4;
    for (int j = 0; j <= m[c]; ++j) cellv.push_back(vs[2 + 4 * j]);
    cornerv.push_back(vs[1]);
    cornerv.push_back(vs[3 + 4 * m[c]]);
  }
  auto cells = Rgs(cellv), corners = Rgs(cornerv);
  const int ncls = cells.empty() ? 0 : *std::max_element(cells.begin(), cells.end()) + 1;
  std::vector<int> cls_vertex(ncls);
  for (size_t q = 0; q < cells.size(); ++q) cls_vertex[cells[q]] = cellv[q];
  // label per shadow vertex
  std::map<int, std::string> label;
  std::vector<std::vector<int>> members(ncls);
  int q = 0;
  for (int c = 0; c < k; ++c) {
    const auto& vs = pre.walks[c].verts;
    for (int j = 0; j <= m[c]; ++j, ++q)
      for (bool ex : {false, true}) {
        int sh = vs[ex ? 3 + 4 * j : 1 + 4 * j];
        label[sh] = ShadowLabel(c, j, m[c], ex, corners);
        auto& M = members[cells[q]];
        if (std::find(M.begin(), M.end(), sh) == M.end()) M.push_back(sh);
      }
  }
  std::vector<std::vector<std::string>> beta(ncls);
  for (int cl = 0; cl < ncls; ++cl) {
    std::vector<std::string> ring;
    for (int x : p.g.rot[cls_vertex[cl]]) {
      int sh = p.g.Head(x);
      if (std::find(members[cl].begin(), members[cl].end(), sh) != members[cl].end()) ring.push_back(label[sh]);
    }
    auto mn = std::min_element(ring.begin(), ring.end());
    std::rotate(ring.begin(), mn, ring.end());
    beta[cl] = ring;
  }
  return KeyString(Rgs(ends), cells, corners, beta);
}

// ---- combination search ----

namespace {

struct SharedSearch {
  const Pipeline& pl;
  const InsertionInstance& inst;
  Variant variant;
  const std::vector<std::vector<std::vector<PWalk>>>& walks;  // [i][ell']
  std::atomic<int64_t>& nodes;
  int64_t cap;
  bool check_templates;
};

class Combiner {
 public:
  Combiner(const SharedSearch& sh, const BudgetProfile& prof) : sh_(sh), d_(sh.inst.drawing), prof_(prof) {
    k_ = sh.inst.k();
    occ_.assign(d_.NumSegments(), {});
    mutual_.assign(k_, 0);
    on_edge_.assign(d_.num_edges, 0);
    chosen_.assign(k_, nullptr);
    traces_.resize(k_);
    total_prof_ = std::accumulate(prof.begin(), prof.end(), 0);
    if (sh.check_templates && k_ <= 2 && total_prof_ <= 2) templates_ = EnumerateTemplateTraces(k_, prof_);
  }

  // leaf callback returns true to stop
  void Run(const std::function<bool(const Preimage&, const Extension&)>& leaf) {
    leaf_ = leaf;
    stop_ = false;
    Place(0);
  }
  int64_t leaves = 0;

 private:
  void Tick() {
    if (sh_.nodes.fetch_add(1, std::memory_order_relaxed) + 1 > sh_.cap) throw CapHit{};
  }

  void Place(int c) {
    if (stop_) return;
    if (c == k_) {
      Leaf();
      return;
    }
    const int ell = sh_.inst.GlobalBudget();
    const bool plane = sh_.variant == Variant::kSLPEI || sh_.variant == Variant::kLPEI;
    for (const auto& w : sh_.walks[c][prof_[c]]) {
      Tick();
      CurveTrace t = TraceOf(sh_.pl.patchwork, w);
      bool ok = true;
      for (int x : t.darts) {
        int e = d_.edge_of[x];
        if (plane && d_.edge_crossings[e] + on_edge_[e] + 1 > ell) ok = false;
        if (static_cast<int>(occ_[d_.seg_of[x]].size()) >= sh_.pl.patchwork.subdiv) ok = false;
      }
      if (!ok) continue;
      for (int x : t.darts) ++on_edge_[d_.edge_of[x]];
      traces_[c] = std::move(t);
      chosen_[c] = &w;
      Insert(c, 0);
      for (int x : traces_[c].darts) --on_edge_[d_.edge_of[x]];
      if (stop_) return;
    }
  }

  void Insert(int c, size_t j) {
    if (stop_) return;
    auto& t = traces_[c];
    if (j == t.darts.size()) {
      Pairs(c);
      return;
    }
    auto& o = occ_[d_.seg_of[t.darts[j]]];
    for (size_t q = 0; q <= o.size(); ++q) {
      Tick();
      o.insert(o.begin() + q, c);
      Insert(c, j + 1);
      o.erase(o.begin() + q);
      if (stop_) return;
    }
  }

  int RankOf(int c, int x) const {
    const auto& o = occ_[d_.seg_of[x]];
    return static_cast<int>(std::find(o.begin(), o.end(), c) - o.begin());
  }

  std::vector<std::array<int64_t, 3>> PassagesOf(int c) const {
    const auto& t = traces_[c];
    std::vector<std::array<int64_t, 3>> out;
    const int m = static_cast<int>(t.darts.size());
    for (int j = 0; j <= m; ++j) {
      int64_t a = j == 0 ? CornerKey(d_, t.start) : CrossKey(d_, d_.map.twin[t.darts[j - 1]], RankOf(c, t.darts[j - 1]));
      int64_t b = j == m ? CornerKey(d_, t.end) : CrossKey(d_, t.darts[j], RankOf(c, t.darts[j]));
      out.push_back({t.cells[j], a, b});
    }
    return out;
  }

  void Pairs(int c) {
    const auto& inst = sh_.inst;
    const bool simple = IsSimpleVariant(sh_.variant);
    auto mine = PassagesOf(c);
    std::vector<int> add(c, 0);
    for (int b = 0; b < c; ++b) {
      auto theirs = PassagesOf(b);
      for (const auto& P : mine)
        for (const auto& Q : theirs)
          if (P[0] == Q[0] && Interleave(P[1], P[2], Q[1], Q[2])) ++add[b];
      if (simple && (add[b] > 1 || (add[b] > 0 && ShareEndpoint(inst.added[b], inst.added[c])))) return;
    }
    int sum = 0;
    for (int b = 0; b < c; ++b) {
      mutual_[b] += add[b];
      sum += add[b];
    }
    mutual_[c] += sum;
    total_mutual_ += sum;
    bool ok = true;
    for (int x = 0; x <= c; ++x) {
      int used = prof_[x] + mutual_[x];
      switch (sh_.variant) {
        case Variant::kSLCEI:
        case Variant::kLCEI: ok = ok && used <= inst.budgets[x]; break;
        case Variant::kSLPEI:
        case Variant::kLPEI: ok = ok && used <= inst.GlobalBudget(); break;
        case Variant::kSCEI: break;
      }
    }
    if (sh_.variant == Variant::kSCEI) ok = ok && total_prof_ + total_mutual_ <= inst.GlobalBudget();
    if (ok) Place(c + 1);
    for (int b = 0; b < c; ++b) mutual_[b] -= add[b];
    mutual_[c] -= sum;
    total_mutual_ -= sum;
  }

  void Leaf() {
    ++leaves;
    const Patchwork& p = sh_.pl.patchwork;
    Preimage pre;
    for (int c = 0; c < k_; ++c) {
      PWalk w = *chosen_[c];
      const auto& t = traces_[c];
      for (size_t j = 0; j < t.darts.size(); ++j) {
        int x = t.darts[j], s = d_.seg_of[x], r = RankOf(c, x);
        w.verts[3 + 4 * j] = p.SegmentShadow(s, r, Side(d_, x));
        w.verts[4 + 4 * j] = p.of_segment[s][r];
        w.verts[5 + 4 * j] = p.SegmentShadow(s, r, 1 - Side(d_, x));
      }
      pre.walks.push_back(std::move(w));
    }
    std::string why;
    if (!CheckPreimageShape(sh_.pl, sh_.inst, pre, &why)) throw FatalDiagnostic("search built a malformed preimage: " + why);
    if (templates_ && !templates_->keys.count(TemplateOf(sh_.pl, sh_.inst, pre)))
      throw FatalDiagnostic("preimage matches no enumerated template trace");
    Extension ext = Assemble(sh_.pl, sh_.inst, pre);
    for (int c = 0; c < k_; ++c)
      if (ext.curves[c].darts != traces_[c].darts)
        throw FatalDiagnostic("assembly disagrees with the search trace of added edge " + std::to_string(c));
    if (leaf_(pre, ext)) stop_ = true;
  }

  const SharedSearch& sh_;
  const Drawing& d_;
  BudgetProfile prof_;
  int k_ = 0, total_prof_ = 0, total_mutual_ = 0;
  std::vector<std::vector<int>> occ_;
  std::vector<int> mutual_, on_edge_;
  std::vector<const PWalk*> chosen_;
  std::vector<CurveTrace> traces_;
  std::optional<TemplateSet> templates_;
  std::function<bool(const Preimage&, const Extension&)> leaf_;
  bool stop_ = false;
};

std::vector<std::vector<std::vector<PWalk>>> AllWalks(const Pipeline& pl, const InsertionInstance& inst,
                                                      Variant variant, int64_t cap, nlohmann::json* stats) {
  std::map<std::pair<int, int>, bool> cache;
  std::vector<std::vector<std::vector<PWalk>>> walks(inst.k());
  nlohmann::json counts = nlohmann::json::array();
  for (int i = 0; i < inst.k(); ++i) {
    const int top = variant == Variant::kSLCEI || variant == Variant::kLCEI ? inst.budgets[i] : inst.GlobalBudget();
    nlohmann::json row = nlohmann::json::array();
    for (int l = 0; l <= top; ++l) {
      WalkEnumerator we(pl, inst, variant, i, &cache, cap);
      walks[i].push_back(we.Run(l));
      row.push_back(walks[i].back().size());
    }
    counts.push_back(row);
  }
  if (stats) {
    (*stats)["walks"] = counts;
    (*stats)["same_edge_checks"] = cache.size();
  }
  return walks;
}

}  // namespace

std::vector<Preimage> StreamPreimages(const Pipeline& pl, const InsertionInstance& inst, Variant variant,
                                      const BudgetProfile& profile, int64_t cap) {
  auto walks = AllWalks(pl, inst, variant, cap, nullptr);
  std::atomic<int64_t> nodes{0};
  SharedSearch sh{pl, inst, variant, walks, nodes, cap, false};
  std::vector<Preimage> out;
  Combiner cb(sh, profile);
  try {
    cb.Run([&](const Preimage& pre, const Extension&) {
      out.push_back(pre);
      return false;
    });
  } catch (const CapHit&) {
  }
  return out;
}

SolveResult SolveWithPipeline(const Pipeline& pl, const InsertionInstance& inst, Variant variant,
                              const SolveOptions& opts) {
  SolveResult res;
  auto profiles = EnumerateBudgetProfiles(inst, variant);
  if (variant == Variant::kSLPEI || variant == Variant::kLPEI) {
    // the drawing itself has to be l-plane already
    const Drawing& d = inst.drawing;
    for (int e = 0; e < d.num_edges; ++e)
      if (d.edge_crossings[e] > inst.GlobalBudget()) {
        res.stats["reason"] = "edge " + std::to_string(e) + " already has " + std::to_string(d.edge_crossings[e]) +
                              " crossings";
        profiles.clear();
        break;
      }
  }
  std::vector<std::vector<std::vector<PWalk>>> walks;
  try {
    walks = AllWalks(pl, inst, variant, opts.max_nodes, &res.stats);
  } catch (const CapHit&) {
    res.status = SolveStatus::kCapExceeded;
    res.nodes = opts.max_nodes;
    res.profile = profiles.empty() ? BudgetProfile{} : profiles.front();
    res.stats["frontier"] = "walk enumeration";
    return res;
  }
  std::atomic<int64_t> nodes{0};
  SharedSearch sh{pl, inst, variant, walks, nodes, opts.max_nodes, opts.check_templates};

  enum Outcome { kPending, kNone, kFound, kCap };
  const int P = static_cast<int>(profiles.size());
  std::vector<Outcome> outcome(P, kPending);
  std::vector<std::optional<Extension>> found(P);
  std::vector<int64_t> leaves(P, 0);
  std::vector<std::string> fatal(P);
  std::atomic<int> next{0}, best{P};
  auto work = [&] {
    for (;;) {
      int q = next.fetch_add(1);
      if (q >= P) return;
      if (q > best.load()) {
        outcome[q] = kNone;
        continue;
      }
      Combiner cb(sh, profiles[q]);
      try {
        cb.Run([&](const Preimage&, const Extension& ext) {
          auto vr = Verify(ext, inst, variant);
          if (!vr.ok) throw FatalDiagnostic("search accepted an extension that verify rejects: " + vr.reasons.front());
          found[q] = ext;
          return true;
        });
        outcome[q] = found[q] ? kFound : kNone;
        if (found[q]) {
          int cur = best.load();
          while (q < cur && !best.compare_exchange_weak(cur, q)) {
          }
        }
      } catch (const CapHit&) {
        outcome[q] = kCap;
      } catch (const FatalDiagnostic& e) {
        fatal[q] = e.what();
        outcome[q] = kNone;
      }
      leaves[q] = cb.leaves;
    }
  };
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  res.nodes = nodes.load();
  int64_t total_leaves = 0;
  int tried = 0;
  res.status = SolveStatus::kInfeasible;
  for (int q = 0; q < P; ++q) {
    if (!fatal[q].empty()) throw FatalDiagnostic(fatal[q]);
    total_leaves += leaves[q];
    ++tried;
    if (outcome[q] == kCap) {
      res.status = SolveStatus::kCapExceeded;
      res.profile = profiles[q];
      res.stats["frontier"] = "profile search";
      break;
    }
    if (outcome[q] == kFound) {
      res.status = SolveStatus::kFeasible;
      res.profile = profiles[q];
      res.solution = found[q];
      break;
    }
  }
  res.stats["profiles"] = P;
  res.stats["profiles_examined"] = tried;
  res.stats["leaves"] = total_leaves;
  res.stats["nodes"] = res.nodes;
  if (res.status == SolveStatus::kInfeasible && opts.oracle_fallback && BruteForceWithinGuards(inst)) {
    auto bf = BruteForceSolve(inst, variant);
    res.stats["oracle_fallback"] = StatusName(bf.status);
    if (bf.status == SolveStatus::kFeasible)
      throw FatalDiagnostic("patchwork search found nothing but the planarization oracle found a solution with profile " +
                            Join(bf.profile));
  }
  return res;
}

SolveResult Solve(const InsertionInstance& inst, Variant variant, const SolveOptions& opts) {
  InsertionInstance copy = inst;
  copy.variant = variant;
  Pipeline pl = RunPipeline(copy);
  return SolveWithPipeline(pl, copy, variant, opts);
}

}  // namespace sdx
