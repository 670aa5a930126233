#include "sdx/extension.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "sdx/errors.h"

namespace sdx {

namespace {

constexpr int64_t kSpan = 1 << 20;

// cyclic position inside face(w): the corner at tail(w) comes first, then
// the crossings of w's segment from tail(w) to head(w)
int64_t CornerKey(const Drawing& d, int w) { return d.faces.index_in_walk[w] * (2 * kSpan); }
int64_t CrossKey(const Drawing& d, int w, int rank) {
  int64_t along = d.IsCanonical(w) ? rank : kSpan - 1 - rank;
  return d.faces.index_in_walk[w] * (2 * kSpan) + 1 + along;
}

struct Passage {
  int curve, pass, cell;
  int64_t in, out;
};

std::vector<Passage> Passages(const Extension& ext, const Drawing& d) {
  std::vector<Passage> out;
  for (int c = 0; c < static_cast<int>(ext.curves.size()); ++c) {
    const auto& cv = ext.curves[c];
    const int m = static_cast<int>(cv.darts.size());
    for (int j = 0; j <= m; ++j) {
      Passage p{c, j, cv.cells[j], 0, 0};
      p.in = j == 0 ? CornerKey(d, cv.start) : CrossKey(d, d.map.twin[cv.darts[j - 1]], cv.ranks[j - 1]);
      p.out = j == m ? CornerKey(d, cv.end) : CrossKey(d, cv.darts[j], cv.ranks[j]);
      out.push_back(p);
    }
  }
  return out;
}

bool Interleave(int64_t a, int64_t b, int64_t c, int64_t e) {
  if (a == c || a == e || b == c || b == e) return false;
  if (a > b) std::swap(a, b);
  return (a < c && c < b) != (a < e && e < b);
}

std::string CurveName(int c) { return "added edge " + std::to_string(c); }

}  // namespace

std::vector<NewCrossing> InterleavingCrossings(const Extension& ext, const Drawing& d,
                                               std::vector<std::string>* self_problems) {
  auto ps = Passages(ext, d);
  std::map<int, std::vector<int>> by_cell;
  for (int x = 0; x < static_cast<int>(ps.size()); ++x) by_cell[ps[x].cell].push_back(x);
  std::vector<NewCrossing> out;
  for (auto& [cell, xs] : by_cell)
    for (size_t a = 0; a < xs.size(); ++a)
      for (size_t b = a + 1; b < xs.size(); ++b) {
        const auto &P = ps[xs[a]], &Q = ps[xs[b]];
        if (!Interleave(P.in, P.out, Q.in, Q.out)) continue;
        if (P.curve == Q.curve) {
          if (self_problems)
            self_problems->push_back(CurveName(P.curve) + " crosses itself in cell " + std::to_string(cell));
          continue;
        }
        NewCrossing nc{P.curve, Q.curve, cell, P.pass, Q.pass};
        if (nc.a > nc.b) {
          std::swap(nc.a, nc.b);
          std::swap(nc.pass_a, nc.pass_b);
        }
        out.push_back(nc);
      }
  std::sort(out.begin(), out.end());
  return out;
}

VerifyResult Verify(const Extension& ext, const InsertionInstance& inst, Variant variant) {
  const Drawing& d = inst.drawing;
  VerifyResult r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.reasons.push_back(std::move(why));
  };
  const int k = inst.k();
  if (static_cast<int>(ext.curves.size()) != k) {
    fail("expected " + std::to_string(k) + " curves, got " + std::to_string(ext.curves.size()));
    return r;
  }
  const int D = d.map.num_darts, F = d.faces.NumFaces();
  auto dart_ok = [&](int x) { return x >= 0 && x < D; };
  for (int c = 0; c < k; ++c) {
    const auto& cv = ext.curves[c];
    auto [s, t] = inst.added[c];
    const int m = static_cast<int>(cv.darts.size());
    if (static_cast<int>(cv.cells.size()) != m + 1 || static_cast<int>(cv.ranks.size()) != m) {
      fail(CurveName(c) + ": cells/darts/ranks lengths disagree");
      continue;
    }
    bool shape = dart_ok(cv.start) && dart_ok(cv.end);
    for (int x : cv.darts) shape = shape && dart_ok(x);
    for (int f : cv.cells) shape = shape && f >= 0 && f < F;
    if (!shape) {
      fail(CurveName(c) + ": dart or cell out of range");
      continue;
    }
    if (d.Tail(cv.start) != s || d.faces.face_of[cv.start] != cv.cells.front())
      fail(CurveName(c) + ": start corner is not at s in the first cell");
    if (d.Tail(cv.end) != t || d.faces.face_of[cv.end] != cv.cells.back())
      fail(CurveName(c) + ": end corner is not at t in the last cell");
    for (int j = 0; j < m; ++j) {
      if (d.faces.face_of[cv.darts[j]] != cv.cells[j] ||
          d.faces.face_of[d.map.twin[cv.darts[j]]] != cv.cells[j + 1])
        fail(CurveName(c) + ": crossing " + std::to_string(j) + " does not join consecutive cells");
    }
  }
  if (!r.ok) return r;
  // crossing order along each segment
  std::map<int, std::vector<int>> ranks_on;
  for (const auto& cv : ext.curves)
    for (size_t j = 0; j < cv.darts.size(); ++j) ranks_on[d.seg_of[cv.darts[j]]].push_back(cv.ranks[j]);
  for (auto& [seg, rs] : ranks_on) {
    std::sort(rs.begin(), rs.end());
    for (int j = 0; j < static_cast<int>(rs.size()); ++j)
      if (rs[j] != j) {
        fail("segment " + std::to_string(seg) + ": crossing ranks are not 0..n-1");
        break;
      }
  }
  if (!r.ok) return r;

  std::vector<std::string> self;
  auto forced = InterleavingCrossings(ext, d, &self);
  for (auto& s : self) fail(s);
  auto declared = ext.declared;
  std::sort(declared.begin(), declared.end());
  if (declared != forced)
    fail("declared crossings (" + std::to_string(declared.size()) + ") differ from interleavings (" +
         std::to_string(forced.size()) + ")");

  const bool simple = IsSimpleVariant(variant);
  r.existing.assign(k, 0);
  r.mutual.assign(k, 0);
  std::vector<int> on_edge(d.num_edges, 0);
  for (int c = 0; c < k; ++c) {
    const auto& cv = ext.curves[c];
    auto [s, t] = inst.added[c];
    std::map<int, int> per_edge;
    for (int x : cv.darts) {
      int e = d.edge_of[x];
      ++per_edge[e];
      ++on_edge[e];
    }
    r.existing[c] = static_cast<int>(cv.darts.size());
    if (!simple) continue;
    for (auto [e, n] : per_edge) {
      if (n > 1) fail(CurveName(c) + " crosses edge " + std::to_string(e) + " " + std::to_string(n) + " times");
      if (d.Incident(e, s) || d.Incident(e, t))
        fail(CurveName(c) + " crosses edge " + std::to_string(e) + ", which shares an endpoint with it");
    }
  }
  std::map<std::pair<int, int>, int> pair_count;
  for (const auto& nc : forced) {
    ++pair_count[{nc.a, nc.b}];
    ++r.mutual[nc.a];
    ++r.mutual[nc.b];
  }
  if (simple)
    for (auto [ab, n] : pair_count) {
      auto [a, b] = ab;
      auto A = inst.added[a], B = inst.added[b];
      bool share = A.first == B.first || A.first == B.second || A.second == B.first || A.second == B.second;
      if (n > 1) fail(CurveName(a) + " and " + CurveName(b) + " cross " + std::to_string(n) + " times");
      if (share && n > 0) fail(CurveName(a) + " and " + CurveName(b) + " share an endpoint but cross");
    }
  int existing_total = 0;
  for (int c = 0; c < k; ++c) existing_total += r.existing[c];
  r.crossing_points = existing_total + static_cast<int>(forced.size());
  switch (variant) {
    case Variant::kSLCEI:
    case Variant::kLCEI:
      for (int c = 0; c < k; ++c)
        if (r.existing[c] + r.mutual[c] > inst.budgets[c])
          fail(CurveName(c) + " has " + std::to_string(r.existing[c] + r.mutual[c]) + " crossings, budget " +
               std::to_string(inst.budgets[c]));
      break;
    case Variant::kSCEI:
      if (r.crossing_points > inst.GlobalBudget())
        fail("inserted edges take part in " + std::to_string(r.crossing_points) + " crossings, budget " +
             std::to_string(inst.GlobalBudget()));
      break;
    case Variant::kSLPEI:
    case Variant::kLPEI: {
      const int ell = inst.GlobalBudget();
      for (int c = 0; c < k; ++c)
        if (r.existing[c] + r.mutual[c] > ell)
          fail(CurveName(c) + " has " + std::to_string(r.existing[c] + r.mutual[c]) + " crossings, bound " +
               std::to_string(ell));
      for (int e = 0; e < d.num_edges; ++e)
        if (d.edge_crossings[e] + on_edge[e] > ell)
          fail("edge " + std::to_string(e) + " ends up with " + std::to_string(d.edge_crossings[e] + on_edge[e]) +
               " crossings, bound " + std::to_string(ell));
      break;
    }
  }
  return r;
}

nlohmann::json CrossingSequences(const Extension& ext, const Drawing& d) {
  using nlohmann::json;
  auto ps = Passages(ext, d);
  std::map<int, std::vector<int>> by_cell;
  for (int x = 0; x < static_cast<int>(ps.size()); ++x) by_cell[ps[x].cell].push_back(x);
  // each cell: positions placed on a convex chain, so chords are straight and
  // the order of crossings along a chord is an exact rational comparison
  std::map<std::pair<int, int>, std::vector<std::pair<std::pair<__int128, __int128>, int>>> along;
  for (auto& [cell, xs] : by_cell) {
    std::vector<int64_t> keys;
    for (int x : xs) {
      keys.push_back(ps[x].in);
      keys.push_back(ps[x].out);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    auto pt = [&](int64_t key) {
      int64_t r = std::lower_bound(keys.begin(), keys.end(), key) - keys.begin();
      return std::array<__int128, 2>{-r, r * r};
    };
    for (int x : xs)
      for (int y : xs) {
        const auto &P = ps[x], &Q = ps[y];
        if (P.curve == Q.curve || !Interleave(P.in, P.out, Q.in, Q.out)) continue;
        auto A = pt(P.in), B = pt(P.out), C = pt(Q.in), E = pt(Q.out);
        __int128 rx = B[0] - A[0], ry = B[1] - A[1], sx = E[0] - C[0], sy = E[1] - C[1];
        __int128 den = rx * sy - ry * sx;
        __int128 num = (C[0] - A[0]) * sy - (C[1] - A[1]) * sx;
        if (den < 0) {
          den = -den;
          num = -num;
        }
        along[{P.curve, P.pass}].push_back({{num, den}, Q.curve});
      }
  }
  json out = json::array();
  for (int c = 0; c < static_cast<int>(ext.curves.size()); ++c) {
    const auto& cv = ext.curves[c];
    json seq = json::array();
    for (size_t j = 0; j <= cv.darts.size(); ++j) {
      auto it = along.find({c, static_cast<int>(j)});
      if (it != along.end()) {
        auto v = it->second;
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
          return a.first.first * b.first.second < b.first.first * a.first.second;
        });
        for (auto& [pr, other] : v) seq.push_back({{"added", other}});
      }
      if (j < cv.darts.size())
        seq.push_back({{"edge", d.edge_of[cv.darts[j]]}, {"segment", d.seg_index[cv.darts[j]]}});
    }
    out.push_back(seq);
  }
  return out;
}

nlohmann::json ExtensionToJson(const Extension& ext, const InsertionInstance& inst) {
  using nlohmann::json;
  const Drawing& d = inst.drawing;
  json curves = json::array();
  for (int c = 0; c < static_cast<int>(ext.curves.size()); ++c) {
    const auto& cv = ext.curves[c];
    json xs = json::array();
    for (size_t j = 0; j < cv.darts.size(); ++j)
      xs.push_back({{"dart", cv.darts[j]},
                    {"edge", d.edge_of[cv.darts[j]]},
                    {"segment", d.seg_index[cv.darts[j]]},
                    {"rank", cv.ranks[j]}});
    curves.push_back({{"index", c},
                      {"s", inst.added[c].first},
                      {"t", inst.added[c].second},
                      {"access", {{"start", {{"dart", cv.start}, {"cell", cv.cells.front()}}},
                                  {"end", {{"dart", cv.end}, {"cell", cv.cells.back()}}}}},
                      {"cells", cv.cells},
                      {"crossings", xs}});
  }
  json decl = json::array();
  for (const auto& nc : ext.declared)
    decl.push_back({{"a", nc.a}, {"b", nc.b}, {"cell", nc.cell}, {"pass_a", nc.pass_a}, {"pass_b", nc.pass_b}});
  return {{"curves", curves}, {"declared", decl}, {"sequences", CrossingSequences(ext, d)}};
}

Extension ExtensionFromJson(const nlohmann::json& j, const InsertionInstance& inst) {
  Extension ext;
  auto need = [](const nlohmann::json& o, const char* key, const std::string& where) -> const nlohmann::json& {
    if (!o.is_object() || !o.contains(key)) throw InputError(where, std::string("missing \"") + key + "\"");
    return o.at(key);
  };
  auto as_int = [](const nlohmann::json& v, const std::string& where) {
    if (!v.is_number_integer()) throw InputError(where, "expected an integer");
    return v.get<int>();
  };
  const auto& curves = need(j, "curves", "");
  if (!curves.is_array()) throw InputError("/curves", "expected an array");
  for (size_t c = 0; c < curves.size(); ++c) {
    std::string base = "/curves/" + std::to_string(c);
    const auto& cj = curves[c];
    CurveTrace cv;
    const auto& acc = need(cj, "access", base);
    cv.start = as_int(need(need(acc, "start", base + "/access"), "dart", base + "/access/start"),
                      base + "/access/start/dart");
    cv.end = as_int(need(need(acc, "end", base + "/access"), "dart", base + "/access/end"),
                    base + "/access/end/dart");
    const auto& cells = need(cj, "cells", base);
    if (!cells.is_array()) throw InputError(base + "/cells", "expected an array");
    for (size_t q = 0; q < cells.size(); ++q) cv.cells.push_back(as_int(cells[q], base + "/cells/" + std::to_string(q)));
    const auto& xs = need(cj, "crossings", base);
    if (!xs.is_array()) throw InputError(base + "/crossings", "expected an array");
    for (size_t q = 0; q < xs.size(); ++q) {
      std::string w = base + "/crossings/" + std::to_string(q);
      cv.darts.push_back(as_int(need(xs[q], "dart", w), w + "/dart"));
      cv.ranks.push_back(as_int(need(xs[q], "rank", w), w + "/rank"));
    }
    ext.curves.push_back(std::move(cv));
  }
  if (j.contains("declared")) {
    const auto& ds = j.at("declared");
    if (!ds.is_array()) throw InputError("/declared", "expected an array");
    for (size_t q = 0; q < ds.size(); ++q) {
      std::string w = "/declared/" + std::to_string(q);
      NewCrossing nc;
      nc.a = as_int(need(ds[q], "a", w), w + "/a");
      nc.b = as_int(need(ds[q], "b", w), w + "/b");
      nc.cell = as_int(need(ds[q], "cell", w), w + "/cell");
      nc.pass_a = as_int(need(ds[q], "pass_a", w), w + "/pass_a");
      nc.pass_b = as_int(need(ds[q], "pass_b", w), w + "/pass_b");
      ext.declared.push_back(nc);
    }
  }
  (void)inst;
  return ext;
}

}  // namespace sdx
