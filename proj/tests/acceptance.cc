// One line per acceptance criterion; exit status is non-zero if any fails.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sdx/brute_force.h"
#include "sdx/corpus.h"
#include "sdx/crossable.h"
#include "sdx/errors.h"
#include "sdx/json_io.h"
#include "sdx/report.h"
#include "sdx/single_edge.h"
#include "sdx/structural.h"

using namespace sdx;
using nlohmann::json;

namespace {

const Variant kFour[] = {Variant::kSLCEI, Variant::kSCEI, Variant::kSLPEI, Variant::kLPEI};

double Now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

struct Corpus {
  std::vector<GeneratedInstance> c1, c2;
  std::vector<NamedInstance> adv;
  std::vector<InsertionInstance> adv_inst;
};

struct Line {
  bool pass = true;
  std::string detail;
  std::vector<std::string> examples;  // first few failures
  void Fail(const std::string& why) {
    pass = false;
    if (examples.size() < 5) examples.push_back(why);
  }
};

int Crossings(const std::optional<Extension>& e) {
  if (!e) return -1;
  int n = 0;
  for (auto& c : e->curves) n += static_cast<int>(c.darts.size());
  return n;
}

std::string Name(const char* tag, size_t j) { return std::string(tag) + "#" + std::to_string(j); }

// -------- 1: single edge against the colourful brute force and the walk oracle
Line SingleEdgeOracle(const Corpus& C, json& rep) {
  Line L;
  int dis = 0, brute_checked = 0, brute_partial = 0, feasible = 0;
  std::map<int, int> by_count;
  for (size_t j = 0; j < C.c1.size(); ++j) {
    const auto& inst = C.c1[j].instance;
    auto got = SolveSingle(inst, RepEngine::kAuto, false);
    if (got.solution && !Verify(*got.solution, inst, Variant::kSLCEI).ok) L.Fail(Name("C1", j) + ": solution rejected");
    int colorful = -1;
    for (int lp = 0; lp <= inst.budgets[0] && colorful < 0; ++lp) {
      auto cpi = ReduceToColorful(inst, lp);
      if (auto p = BruteForceColorful(cpi)) {
        Extension ext = PathToExtension(cpi, inst, *p);
        if (!Verify(ext, inst, Variant::kSLCEI).ok) L.Fail(Name("C1", j) + ": colourful oracle path does not verify");
        colorful = static_cast<int>(ext.curves[0].darts.size());
      }
    }
    // walk oracle: smallest budget the planarization brute force accepts
    int walks = -1;
    bool complete = false;
    if (inst.drawing.NumCrossings() <= 12) {
      auto probe = inst;
      const int top = std::min(inst.budgets[0], 3);
      for (int b = 0; b <= top && walks < 0; ++b) {
        probe.budgets[0] = b;
        auto r = BruteForceSolve(probe, Variant::kSLCEI);
        if (r.status == SolveStatus::kCapExceeded) break;
        if (r.status == SolveStatus::kFeasible) walks = b;
      }
      complete = walks >= 0 || inst.budgets[0] <= 3;
      ++(complete ? brute_checked : brute_partial);
    }
    bool disagree = got.crossings != colorful;
    if (complete) disagree = disagree || walks != got.crossings;
    // budget 4 and nothing up to 3: only 4 crossings or none remain possible
    else if (inst.drawing.NumCrossings() <= 12) disagree = disagree || (got.crossings >= 0 && got.crossings <= 3);
    if (disagree) {
      ++dis;
      L.Fail(Name("C1", j) + ": solve1 " + std::to_string(got.crossings) + ", colourful " + std::to_string(colorful) +
             ", walks " + std::to_string(walks));
    }
    if (got.solution) ++feasible;
    ++by_count[got.crossings];
    rep.push_back({j, got.crossings});
  }
  std::string hist;
  for (auto [c, n] : by_count) hist += (hist.empty() ? "" : " ") + std::to_string(c) + ":" + std::to_string(n);
  L.detail = std::to_string(C.c1.size()) + " instances, " + std::to_string(dis) + " disagreements, " +
             std::to_string(feasible) + " feasible, crossings histogram {" + hist + "}, walk oracle complete on " +
             std::to_string(brute_checked) + " (partial " + std::to_string(brute_partial) + ", skipped " +
             std::to_string(C.c1.size() - brute_checked - brute_partial) + " over its crossing guard)";
  return L;
}

// -------- 2: multi edge against brute force, four variants
Line MultiEdgeOracle(const Corpus& C, json& rep) {
  Line L;
  int dis = 0, feas = 0, runs = 0;
  SolveOptions opts;
  opts.oracle_fallback = false;  // keep the comparison two-sided
  for (size_t j = 0; j < C.c2.size(); ++j) {
    const auto& inst = C.c2[j].instance;
    for (Variant v : kFour) {
      auto a = Solve(inst, v, opts);
      auto b = BruteForceSolve(inst, v);
      ++runs;
      if (a.status == SolveStatus::kCapExceeded || b.status == SolveStatus::kCapExceeded) {
        L.Fail(Name("C2", j) + " " + VariantName(v) + ": cap exceeded");
        continue;
      }
      if (a.status != b.status) {
        ++dis;
        L.Fail(Name("C2", j) + " " + VariantName(v) + ": solve " + StatusName(a.status) + ", brute " + StatusName(b.status));
      }
      for (auto* r : {&a, &b})
        if (r->solution && !Verify(*r->solution, inst, v).ok) L.Fail(Name("C2", j) + " " + VariantName(v) + ": rejected solution");
      if (a.solution) ++feas;
      rep.push_back({j, VariantName(v), StatusName(a.status), a.profile});
    }
  }
  L.detail = std::to_string(C.c2.size()) + " instances x 4 variants, " + std::to_string(dis) + " disagreements, " +
             std::to_string(feas) + "/" + std::to_string(runs) + " feasible, every solution verified";
  return L;
}

// -------- 3: general solver vs single edge on all k = 1 instances
Line CrossModule(const Corpus& C, json& rep) {
  Line L;
  int n = 0, dis = 0;
  auto one = [&](const InsertionInstance& inst, const std::string& name) {
    auto a = Solve(inst, Variant::kSLCEI);
    auto b = SolveSingle(inst);
    ++n;
    int ca = Crossings(a.solution);
    if (a.status != b.status || ca != b.crossings) {
      ++dis;
      L.Fail(name + ": solve " + std::to_string(ca) + ", solve1 " + std::to_string(b.crossings));
    }
    rep.push_back({name, ca});
  };
  for (size_t j = 0; j < C.c1.size(); ++j) one(C.c1[j].instance, Name("C1", j));
  for (size_t j = 0; j < C.c2.size(); ++j)
    if (C.c2[j].instance.k() == 1) one(C.c2[j].instance, Name("C2", j));
  L.detail = std::to_string(n) + " k=1 instances, " + std::to_string(dis) + " disagreements";
  return L;
}

// -------- 4: representative families
Line RepContract(const Corpus& C, json& rep) {
  Line L;
  std::mt19937_64 rng(4242);
  int families = 0, shrunk = 0;
  int64_t in = 0, out = 0;
  while (families < 200) {
    const int u = 4 + static_cast<int>(rng() % 7);
    const int p = 1 + static_cast<int>(rng() % 4), q = 1 + static_cast<int>(rng() % 4);
    if (p + q > u) continue;
    const int count = 1 + static_cast<int>(rng() % 40);
    std::set<ColorSet> fs;
    for (int j = 0; j < count; ++j) {
      std::vector<int> all(u);
      for (int c = 0; c < u; ++c) all[c] = c;
      std::shuffle(all.begin(), all.end(), rng);
      ColorSet a(all.begin(), all.begin() + p);
      std::sort(a.begin(), a.end());
      fs.insert(a);
    }
    Family f(fs.begin(), fs.end());
    Family r = RepFamily(f, p, q, u, RepEngine::kPruned);
    if (!QRepresents(f, r, p, q, u))
      L.Fail("family " + std::to_string(families) + " (u=" + std::to_string(u) + ", p=" + std::to_string(p) +
             ", q=" + std::to_string(q) + ") not represented");
    shrunk += r.size() < f.size();
    in += static_cast<int64_t>(f.size());
    out += static_cast<int64_t>(r.size());
    ++families;
  }
  int rounds = 0, dis = 0;
  auto dp = [&](const InsertionInstance& inst, const std::string& name) {
    for (int lp = 0; lp <= inst.budgets[0]; ++lp) {
      auto cpi = ReduceToColorful(inst, lp);
      auto a = ColorfulShortPath(cpi, RepEngine::kExact);
      auto b = ColorfulShortPath(cpi, RepEngine::kPruned);
      ++rounds;
      if (a.has_value() != b.has_value() || (a && a->size() != b->size())) {
        ++dis;
        L.Fail(name + " l'=" + std::to_string(lp) + ": exact and pruned differ");
      }
      rep.push_back({name, lp, a ? static_cast<int>(a->size()) : -1});
    }
  };
  for (size_t j = 0; j < C.c1.size(); ++j) dp(C.c1[j].instance, Name("C1", j));
  for (size_t j = 0; j < C.c2.size(); ++j)
    if (C.c2[j].instance.k() == 1) dp(C.c2[j].instance, Name("C2", j));
  L.detail = "200 families (" + std::to_string(shrunk) + " shrunk, " + std::to_string(in) + " -> " + std::to_string(out) +
             " sets), exhaustive B sweep; DP exact vs pruned on " + std::to_string(rounds) + " corpus rounds, " +
             std::to_string(dis) + " differ";
  return L;
}

// -------- 5: bounds
Line Bounds(const Corpus& C, json& rep) {
  Line L;
  int n = 0, parts_max = 0, gpd_fail = 0, pw_fail = 0, kappa_checks = 0;
  int worst_gpd_slack = 1 << 30, combined_max_over = 0;
  auto one = [&](InsertionInstance inst, Variant v, const std::string& name) {
    inst.variant = v;
    auto pl = RunPipeline(inst);
    auto b = BoundsReport(inst, pl);
    ++n;
    for (auto& row : b["crossable_parts"]) {
      parts_max = std::max(parts_max, row["parts"].get<int>());
      if (!row["ok"].get<bool>()) L.Fail(name + ": crossable parts " + row["parts"].dump() + " not below the bound");
    }
    for (auto& row : b["gpd"]["per_edge"]) {
      int gd = row["diameter"].get<int>(), gb = row["bound"].get<int>();
      worst_gpd_slack = std::min(worst_gpd_slack, gb - gd);
      if (!row["ok"].get<bool>()) {
        ++gpd_fail;
        L.Fail(name + " " + VariantName(v) + " edge " + row["edge"].dump() + ": G^p_d diameter " + std::to_string(gd) +
               " > " + std::to_string(gb));
      }
    }
    combined_max_over += b["gpd"]["combined_diameter"].get<int>() > 4 * (inst.k() ? inst.MaxEffectiveBudget() : 0) + 4;
    if (!b["patchwork"]["ok"].get<bool>()) {
      ++pw_fail;
      L.Fail(name + ": P+ diameter over its bound");
    }
    if (inst.k() == 1)
      for (int lp = 0; lp <= inst.budgets[0]; ++lp) {
        ++kappa_checks;
        if (ReduceToColorful(inst, lp).kappa != 2 * lp + 3) L.Fail(name + ": kappa is not 2l+3");
      }
    rep.push_back({name, VariantName(v), b["gpd"]["per_edge"], b["gpd"]["combined_diameter"], b["patchwork"]["diameter_plus"]});
  };
  for (size_t j = 0; j < C.c1.size(); ++j) one(C.c1[j].instance, Variant::kSLCEI, Name("C1", j));
  for (size_t j = 0; j < C.c2.size(); ++j)
    for (Variant v : kFour) one(C.c2[j].instance, v, Name("C2", j));
  for (size_t j = 0; j < C.adv.size(); ++j) one(C.adv_inst[j], C.adv_inst[j].variant, C.adv[j].name);
  L.detail = std::to_string(n) + " pipelines; max crossable parts " + std::to_string(parts_max) +
             "; per-edge G^p_d over 4l_i+4: " + std::to_string(gpd_fail) + " (least slack " + std::to_string(worst_gpd_slack) +
             "; combined graph over 4l+4 on " + std::to_string(combined_max_over) + ", not asserted); P+ over bound: " + std::to_string(pw_fail) + "; kappa checked " + std::to_string(kappa_checks) + "x";
  return L;
}

// -------- 6: structural suite
Line Structure(const Corpus& C, json& rep) {
  Line L;
  int n = 0, with_solution = 0;
  SolveOptions opts;
  opts.max_nodes = 2000000;
  auto one = [&](const InsertionInstance& inst, const std::string& name) {
    auto pl = RunPipeline(inst);
    std::optional<Extension> sol;
    if (inst.k() > 0) {
      auto r = SolveWithPipeline(pl, inst, inst.variant, opts);
      sol = r.solution;
    }
    auto bad = CheckStructure(inst, pl, sol ? &*sol : nullptr);
    ++n;
    with_solution += sol.has_value();
    for (auto& b : bad) L.Fail(name + ": " + b);
    rep.push_back({name, bad.size()});
  };
  for (size_t j = 0; j < C.c1.size(); ++j) one(C.c1[j].instance, Name("C1", j));
  for (size_t j = 0; j < C.c2.size(); ++j) one(C.c2[j].instance, Name("C2", j));
  for (size_t j = 0; j < C.adv.size(); ++j) one(C.adv_inst[j], C.adv[j].name);
  L.detail = std::to_string(n) + " instances (" + std::to_string(C.adv.size()) + " adversarial), " +
             std::to_string(with_solution) + " with an assembled solution checked";
  return L;
}

// CLI-level reports for a few instances, also under --jobs 4
json Reports(const Corpus& C) {
  json out = json::array();
  for (size_t j = 0; j < C.c2.size(); j += 10) {
    RunContext ctx;
    ctx.command = "solve";
    ctx.instance_json = StraightLineToJson(C.c2[j].input);
    SolveOptions o;
    for (int jobs : {1, 4}) {
      o.jobs = jobs;
      ctx.flags = {{"jobs", jobs}};
      out.push_back(RunSolve(ctx, C.c2[j].instance, Variant::kSLCEI, o, true).report);
    }
  }
  for (size_t j = 0; j < C.c1.size(); j += 25) {
    RunContext ctx;
    ctx.command = "solve1";
    ctx.instance_json = StraightLineToJson(C.c1[j].input);
    out.push_back(RunSolveSingle(ctx, C.c1[j].instance, RepEngine::kPruned, true).report);
  }
  return out;
}

Corpus Load() {
  Corpus C;
  C.c1 = SingleEdgeCorpus();
  C.c2 = MultiEdgeCorpus();
  C.adv = AdversarialInstances();
  for (auto& a : C.adv) C.adv_inst.push_back(IngestStraightLine(a.input));
  return C;
}

struct Suite {
  std::vector<Line> lines;
  json report;
  std::vector<double> secs;
};

Suite RunSuite() {
  Suite S;
  Corpus C = Load();
  using Fn = Line (*)(const Corpus&, json&);
  const std::pair<const char*, Fn> parts[] = {{"single_edge", SingleEdgeOracle}, {"multi_edge", MultiEdgeOracle},
                                              {"cross_module", CrossModule},    {"rep_families", RepContract},
                                              {"bounds", Bounds},               {"structure", Structure}};
  for (auto [key, fn] : parts) {
    double t = Now();
    json rows = json::array();
    Line l;
    try {
      l = fn(C, rows);
    } catch (const std::exception& e) {
      l.Fail(std::string("exception: ") + e.what());
    }
    S.secs.push_back(Now() - t);
    S.report[key] = {{"pass", l.pass}, {"detail", l.detail}, {"rows", rows}};
    S.lines.push_back(l);
  }
  S.report["run_reports"] = Reports(C);
  return S;
}

void Print(int id, const char* title, const Line& l, double secs) {
  std::printf("%s [%d] %s: %s (%.1f s)\n", l.pass ? "PASS" : "FAIL", id, title, l.detail.c_str(), secs);
  for (auto& e : l.examples) std::printf("       %s\n", e.c_str());
}

// one timed DP round; returns the outcome word
std::string BenchRound(const ColorfulPathInstance& cpi, RepEngine engine, int64_t cap, const std::string& tag) {
  DpStats st;
  double t = Now();
  std::string what;
  try {
    auto p = ColorfulShortPath(cpi, engine, &st, cap);
    what = p ? "path of " + std::to_string(p->size() - 1) : "no path";
  } catch (const GuardTripped&) {
    what = "over set cap";
  }
  double s = Now() - t;
  std::printf("       %skappa=%2d %-12s max_family=%-8lld %7.3f s%s\n", tag.c_str(), cpi.kappa, what.c_str(),
              static_cast<long long>(st.max_family), s, s <= 60 ? "" : "  (over target)");
  std::fflush(stdout);
  return what;
}

// Series one: 13 nested squares plus a pendant P outside, 53 vertices. The
// edge from the NE corner of layer r to P needs exactly 13 - r crossings, so
// each round has a path of exactly kappa edges.
void Benchmark() {
  const int layers = 13;
  auto base = NestedSquares(layers, false, false);
  base.points.push_back({3 * layers + 5, 3 * layers + 5});
  const int P = static_cast<int>(base.points.size()) - 1;
  base.edges.push_back({4 * (layers - 1) + 1, P});
  const int64_t cap = 6000000;  // stored colour sets; about 3 GB
  std::printf("SOFT benchmark: exact colourful DP, %zu-vertex nested squares, target <= 60 s per kappa, cap %lld sets\n",
              base.points.size(), static_cast<long long>(cap));
  for (int r = layers; r >= 1; --r) {
    auto in = base;
    in.added = {{4 * (r - 1) + 2, P}};
    const int ell = layers - r;
    in.budgets = {ell};
    auto cpi = ReduceToColorful(IngestStraightLine(in), ell);
    std::string what = BenchRound(cpi, RepEngine::kExact, cap, "");
    if (what == "over set cap") break;  // larger kappa only grows
  }
  // series two: dense random straight-line drawing, 50 points, 70 edges
  auto dense = RandomInstance(50, 70, 1, 0, 77).instance;
  std::printf("SOFT benchmark: %d-vertex planarization of a 50-point random drawing, exact and pruned\n",
              dense.drawing.NumVertices());
  for (int ell = 0; ell <= 12; ell += 2) {
    auto cpi = ReduceToColorful(dense, ell);
    BenchRound(cpi, RepEngine::kExact, cap, "exact  ");
    BenchRound(cpi, RepEngine::kPruned, cap, "pruned ");
  }
}

}  // namespace

int main(int argc, char** argv) {
  bool bench = true;
  for (int a = 1; a < argc; ++a)
    if (std::string(argv[a]) == "--no-bench") bench = false;
  const double t0 = Now();
  Suite first = RunSuite();
  const char* titles[] = {"single-edge oracle equivalence", "multi-edge oracle equivalence",
                          "solve vs solve1 on k=1",         "representative-family contract",
                          "bound assertions",               "structural invariants"};
  bool ok = true;
  for (int i = 0; i < 6; ++i) {
    Print(i + 1, titles[i], first.lines[i], first.secs[i]);
    ok = ok && first.lines[i].pass;
  }
  if (first.secs[0] > 300) {
    std::printf("FAIL [1] runtime %.1f s over 5 minutes\n", first.secs[0]);
    ok = false;
  }
  const std::string dump = first.report.dump(1);
  Suite second = RunSuite();
  const std::string again = second.report.dump(1);
  Line det;
  if (dump != again) det.Fail("second run differs");
  det.detail = "two full runs, reports of " + std::to_string(dump.size()) + " bytes, digest " +
               Digest(first.report) + (dump == again ? " identical" : " vs " + Digest(second.report));
  Print(7, "determinism", det, 0);
  ok = ok && det.pass;
  std::ofstream("acceptance_report.json") << dump << "\n";
  if (bench) Benchmark();
  std::printf("%s total %.1f s\n", ok ? "ALL PASS" : "SOME FAILED", Now() - t0);
  return ok ? 0 : 1;
}
