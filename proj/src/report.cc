#include "sdx/report.h"

#include <chrono>

#include "sdx/brute_force.h"
#include "sdx/crossable.h"
#include "sdx/errors.h"
#include "sdx/json_io.h"

namespace sdx {

using nlohmann::json;

namespace {

class Clock {
 public:
  void Lap(const std::string& stage) {
    auto now = std::chrono::steady_clock::now();
    laps_[stage] = std::chrono::duration<double, std::milli>(now - t_).count();
    t_ = now;
  }
  const json& laps() const { return laps_; }

 private:
  std::chrono::steady_clock::time_point t_ = std::chrono::steady_clock::now();
  json laps_ = json::object();
};

json Header(const RunContext& ctx, const InsertionInstance& inst) {
  json r;
  r["command"] = ctx.command;
  json prov;
  prov["instance"] = ctx.instance_json;
  prov["flags"] = ctx.flags;
  if (ctx.seed) prov["seed"] = *ctx.seed;
  r["provenance"] = prov;
  r["instance_digest"] = Digest(InstanceToJson(inst));
  return r;
}

void Finish(RunOutput& out, const RunContext& ctx, const Clock& clock) {
  Seal(out.report);
  if (ctx.timings) out.report["timing_ms"] = clock.laps();
}

}  // namespace

json BoundsReport(const InsertionInstance& inst, const Pipeline& pl) {
  json out;
  const int k = inst.k();
  json parts = json::array();
  bool parts_ok = true;
  for (int i = 0; i < k; ++i) {
    int ell = inst.EffectiveBudget(i);
    int n = pl.crossable[i].CountParts();
    bool ok = CheckBound(n, k, ell);
    parts_ok = parts_ok && ok;
    parts.push_back({{"edge", i}, {"parts", n}, {"bound", CrossableBound(k, ell).str()}, {"ok", ok}});
  }
  out["crossable_parts"] = parts;
  out["crossable_parts_ok"] = parts_ok;
  // the 4l+4 argument measures distances from s_i, so it needs the holes of
  // edge i alone; the combined graph keeps cells near other edges
  json per = json::array();
  bool gpd_ok = true;
  for (int i = 0; i < k; ++i) {
    InsertionInstance one = inst;
    one.added = {inst.added[i]};
    one.budgets = {inst.EffectiveBudget(i)};
    auto hd = ComputeHoles(one, pl.dual);
    int diam = BuildGpd(one, hd).Diameter();
    int bound = 4 * one.budgets[0] + 4;
    gpd_ok = gpd_ok && diam <= bound;
    per.push_back({{"edge", i}, {"diameter", diam}, {"bound", bound}, {"ok", diam <= bound}});
  }
  out["gpd"] = {{"per_edge", per}, {"ok", gpd_ok}, {"combined_diameter", BuildGpd(inst, pl.holes).Diameter()}};
  json pd;
  try {
    pd = Diagnostics(pl.patchwork, inst, pl);
    out["patchwork"] = {{"diameter_plus", pd["diameter_plus"]},
                        {"euler_ok", pd["euler_ok"]},
                        {"ok", !pd.contains("within_bound") || pd["within_bound"].get<bool>()}};
    if (pd.contains("bound")) out["patchwork"]["bound"] = pd["bound"]["diameter_asserted"];
    out["tracking_failures"] = pd["tracking"]["failures"].size();
  } catch (const FatalDiagnostic& e) {
    out["patchwork"] = {{"ok", false}, {"error", e.what()}};
  }
  return out;
}

void Seal(json& report) {
  report.erase("digest");
  report.erase("timing_ms");
  report["digest"] = Digest(report);
}

int ExitCodeFor(SolveStatus s) {
  switch (s) {
    case SolveStatus::kFeasible: return 0;
    case SolveStatus::kInfeasible: return 1;
    case SolveStatus::kCapExceeded: return 2;
  }
  return 2;
}

RunOutput RunSolve(const RunContext& ctx, const InsertionInstance& inst0, Variant variant, const SolveOptions& opts,
                   bool oracle_check) {
  Clock clock;
  InsertionInstance inst = inst0;
  inst.variant = variant;
  RunOutput out;
  out.report = Header(ctx, inst);
  Pipeline pl = RunPipeline(inst);
  clock.Lap("pipeline");
  SolveResult res = SolveWithPipeline(pl, inst, variant, opts);
  clock.Lap("search");
  out.status = res.status;
  json& r = out.report;
  r["variant"] = VariantName(variant);
  r["verdict"] = StatusName(res.status);
  r["profile"] = res.profile;
  r["solution"] = res.solution ? ExtensionToJson(*res.solution, inst) : json(nullptr);
  json diag;
  diag["bounds"] = BoundsReport(inst, pl);
  json stats = res.stats;
  // shared node counter races across workers
  if (opts.jobs > 1) {
    stats.erase("nodes");
    stats.erase("leaves");
  }
  diag["search"] = stats;
  if (res.solution) diag["verify"] = Verify(*res.solution, inst, variant).ok;
  if (oracle_check) {
    if (BruteForceWithinGuards(inst)) {
      auto bf = BruteForceSolve(inst, variant);
      diag["oracle"] = StatusName(bf.status);
      if (bf.status != SolveStatus::kCapExceeded && res.status != SolveStatus::kCapExceeded &&
          bf.status != res.status)
        throw FatalDiagnostic(std::string("solver says ") + StatusName(res.status) + ", brute force says " +
                              StatusName(bf.status));
    } else {
      diag["oracle"] = "skipped: outside brute-force guards";
    }
    clock.Lap("oracle");
  }
  r["diagnostics"] = diag;
  Finish(out, ctx, clock);
  return out;
}

RunOutput RunSolveSingle(const RunContext& ctx, const InsertionInstance& inst, RepEngine engine, bool oracle_check) {
  Clock clock;
  RunOutput out;
  out.report = Header(ctx, inst);
  SingleResult res = SolveSingle(inst, engine, oracle_check);
  clock.Lap("search");
  out.status = res.status;
  json& r = out.report;
  r["variant"] = VariantName(Variant::kSLCEI);
  r["engine"] = EngineName(engine);
  r["verdict"] = StatusName(res.status);
  r["crossings"] = res.crossings;
  r["solution"] = res.solution ? ExtensionToJson(*res.solution, inst) : json(nullptr);
  json diag;
  bool kappa_ok = true;
  for (auto& row : res.stats["rounds"]) kappa_ok = kappa_ok && row["kappa"] == 2 * row["ell"].get<int>() + 3;
  diag["kappa_ok"] = kappa_ok;
  diag["rounds"] = res.stats["rounds"];
  if (res.solution) diag["verify"] = Verify(*res.solution, inst, Variant::kSLCEI).ok;
  r["diagnostics"] = diag;
  Finish(out, ctx, clock);
  return out;
}

RunOutput RunOracle(const RunContext& ctx, const InsertionInstance& inst0, Variant variant) {
  Clock clock;
  InsertionInstance inst = inst0;
  inst.variant = variant;
  RunOutput out;
  out.report = Header(ctx, inst);
  json& r = out.report;
  r["variant"] = VariantName(variant);
  auto bf = BruteForceSolve(inst, variant);  // GuardTripped escapes to the caller
  clock.Lap("brute_force");
  out.status = bf.status;
  r["verdict"] = StatusName(bf.status);
  r["profile"] = bf.profile;
  r["solution"] = bf.solution ? ExtensionToJson(*bf.solution, inst) : json(nullptr);
  json diag;
  diag["nodes"] = bf.nodes;
  if (inst.k() == 1 && variant == Variant::kSLCEI) {
    int best = -1;
    for (int lp = 0; lp <= inst.budgets[0] && best < 0; ++lp) {
      auto cpi = ReduceToColorful(inst, lp);
      if (cpi.NumVertices() > 400 || cpi.kappa > 13) break;
      if (auto p = BruteForceColorful(cpi)) best = static_cast<int>(PathToExtension(cpi, inst, *p).curves[0].darts.size());
    }
    diag["colorful_crossings"] = best;
    clock.Lap("colorful");
  }
  r["diagnostics"] = diag;
  Finish(out, ctx, clock);
  return out;
}

}  // namespace sdx
