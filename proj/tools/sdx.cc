#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sdx/brute_force.h"
#include "sdx/crossable.h"
#include "sdx/errors.h"
#include "sdx/json_io.h"
#include "sdx/report.h"

using namespace sdx;
using nlohmann::json;

namespace {

constexpr int kExitInput = 3;
constexpr int kExitFatal = 4;

struct Globals {
  uint64_t seed = 1;
  bool seed_given = false;
  bool json = false;
  bool quiet = false;
  bool timings = false;
};

void WriteText(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("", "cannot write " + path);
  f << text;
}

std::string Pretty(const json& j) { return j.dump(2) + "\n"; }

Variant VariantOrThrow(const std::string& s) {
  auto v = ParseVariant(s);
  if (!v) throw InputError("--variant", "unknown variant '" + s + "'");
  return *v;
}

// stdout policy: --quiet prints nothing, --json the whole document, else `line`
void Emit(const Globals& g, const json& doc, const std::string& line) {
  if (g.quiet) return;
  std::cout << (g.json ? Pretty(doc) : line + "\n");
}

std::string VerdictLine(const json& r) {
  std::string s = r["verdict"].get<std::string>();
  if (r.contains("crossings")) s += " crossings=" + std::to_string(r["crossings"].get<int>());
  if (r.contains("profile") && !r["profile"].empty()) s += " profile=" + r["profile"].dump();
  return s + " digest=" + r["digest"].get<std::string>();
}

RunContext Context(const Globals& g, const std::string& cmd, const json& instance_json, json flags) {
  RunContext ctx;
  ctx.command = cmd;
  ctx.instance_json = instance_json;
  ctx.flags = std::move(flags);
  if (g.seed_given) ctx.seed = g.seed;
  ctx.timings = g.timings;
  return ctx;
}

int Validate(const Globals& g, const std::string& file, const std::string& extended, const std::string& variant) {
  json doc = ReadJsonFile(file);
  json sol = nullptr;
  std::string var = variant;
  if (doc.is_object() && doc.contains("provenance") && doc["provenance"].contains("instance")) {
    // a run report: check the embedded instance and, with --extended, its solution
    sol = doc["solution"];
    if (var.empty() && doc.contains("variant")) var = doc["variant"].get<std::string>();
    doc = json(doc["provenance"]["instance"]);
  }
  if (doc.is_object() && !doc.contains("points")) {
    ParsedMap pm = ParseMapJson(doc);
    auto res = ValidateDrawing(pm.map, pm.role, pm.edge_of);
    if (!res.ok()) {
      for (const auto& is : res.issues) std::cerr << "invalid drawing [" << is.code << "]: " << is.message << "\n";
      return kExitInput;
    }
  }
  InsertionInstance inst = InstanceFromJson(doc);
  json out{{"valid", true},
           {"vertices", static_cast<int>(inst.drawing.role.size())},
           {"edges", inst.drawing.num_edges},
           {"crossings", inst.drawing.NumCrossings()},
           {"added", inst.k()},
           {"instance_digest", Digest(InstanceToJson(inst))}};
  if (!extended.empty() && extended != file) sol = ReadJsonFile(extended);
  const bool want_ext = !extended.empty();
  if (want_ext) {
    if (sol.is_object() && sol.contains("provenance")) sol = json(sol["solution"]);
    if (sol.is_null()) throw InputError("/solution", "no solution to check");
    Variant v = var.empty() ? inst.variant : VariantOrThrow(var);
    Extension ext = ExtensionFromJson(sol, inst);
    auto vr = Verify(ext, inst, v);
    out["variant"] = VariantName(v);
    out["solution_valid"] = vr.ok;
    out["reasons"] = vr.reasons;
    if (!vr.ok) {
      for (auto& r : vr.reasons) std::cerr << "solution rejected: " << r << "\n";
      Emit(g, out, "invalid solution");
      return kExitInput;
    }
  }
  Emit(g, out,
       std::string(want_ext ? "valid instance and solution" : "valid instance") + " (" +
           std::to_string(inst.drawing.num_edges) + " edges, " + std::to_string(inst.drawing.NumCrossings()) +
           " crossings)");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sdx: edge insertion into simple drawings under crossing budgets"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "seed for every random choice")->capture_default_str();
  app.add_flag("--json", g.json, "print full JSON documents");
  app.add_flag("--quiet", g.quiet, "print nothing on stdout");
  app.add_flag("--timings", g.timings, "attach per-stage timings (outside the digest)");

  std::string instance = "-", out_path, variant_str = "slcei";

  auto* validate = app.add_subcommand("validate", "check an instance, a run report, or a solution");
  std::string vfile = "-", extended, vvariant;
  validate->add_option("file", vfile, "instance or run report");
  auto* ext_opt = validate->add_option("--extended", extended,
                                       "also verify a solution (file, or the report's own when given the report)")
                      ->expected(0, 1);
  validate->add_option("--variant", vvariant);

  auto* ingest = app.add_subcommand("ingest", "coordinates to the combinatorial schema");
  ingest->add_option("--instance", instance);
  ingest->add_option("--out", out_path);

  auto* holes = app.add_subcommand("holes", "far cells and holes");
  holes->add_option("--instance", instance);
  bool holes_report = false;
  holes->add_flag("--report", holes_report, "full JSON report (same as --json)");

  auto* crossable = app.add_subcommand("crossable", "crossable parts of torn edges");
  int edge_i = 0;
  std::string gpd_out;
  crossable->add_option("--instance", instance);
  crossable->add_option("--edge", edge_i, "added edge index")->capture_default_str();
  crossable->add_option("--emit-gpd", gpd_out, "DOT export of the primal-dual graph");

  auto* patchwork = app.add_subcommand("patchwork", "build the patchwork and export it");
  std::string dot_out, graphml_out;
  patchwork->add_option("--instance", instance);
  patchwork->add_option("--emit", dot_out, "DOT file");
  patchwork->add_option("--emit-graphml", graphml_out, "GraphML file");

  auto* solve = app.add_subcommand("solve", "decide and construct an insertion");
  SolveOptions sopts;
  bool oracle_check = false, templates = false;
  solve->add_option("--instance", instance);
  solve->add_option("--variant", variant_str, "slcei|scei|slpei|lpei|lcei")->capture_default_str();
  solve->add_flag("--oracle-check", oracle_check, "compare with brute force where its guards allow");
  solve->add_option("--max-nodes", sopts.max_nodes)->capture_default_str();
  solve->add_option("--jobs", sopts.jobs)->capture_default_str()->check(CLI::PositiveNumber);
  solve->add_flag("--templates", templates, "match every preimage against the enumerated templates");
  solve->add_option("--out", out_path, "write the run report here");

  auto* solve1 = app.add_subcommand("solve1", "single added edge via colourful paths");
  std::string engine_str = "auto";
  solve1->add_option("--instance", instance);
  solve1->add_option("--engine", engine_str, "auto|exact|pruned")->capture_default_str();
  solve1->add_flag("--oracle-check", oracle_check, "exhaustive colourful search per round");
  solve1->add_option("--out", out_path);

  auto* gen = app.add_subcommand("gen", "random straight-line instance");
  int gn = 6, gm = 8, gk = 1, gl = 1;
  bool as_map = false;
  gen->add_option("-n", gn)->capture_default_str();
  gen->add_option("-m", gm)->capture_default_str();
  gen->add_option("-k", gk)->capture_default_str();
  gen->add_option("-l", gl, "budget for every added edge")->capture_default_str();
  gen->add_option("--variant", variant_str)->capture_default_str();
  gen->add_flag("--map", as_map, "emit the combinatorial schema instead of coordinates");
  gen->add_option("--out", out_path);

  auto* oracle = app.add_subcommand("oracle", "brute-force answer (small instances only)");
  oracle->add_option("--instance", instance);
  oracle->add_option("--variant", variant_str)->capture_default_str();
  oracle->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*validate) return Validate(g, vfile, ext_opt->count() ? (extended.empty() ? vfile : extended) : "", vvariant);

    if (*gen) {
      Variant v = VariantOrThrow(variant_str);
      GeneratedInstance gi;
      try {
        gi = RandomInstance(gn, gm, gk, gl, g.seed, v);
      } catch (const InputError&) {
        throw;
      } catch (const std::runtime_error& e) {
        throw InputError("gen", e.what());
      }
      json j = as_map ? InstanceToJson(gi.instance) : StraightLineToJson(gi.input);
      j["provenance"] = {{"generator", "sdx gen"}, {"seed", g.seed}, {"grid", gi.grid}, {"attempts", gi.attempts},
                         {"n", gn},           {"m", gm},         {"k", gk},         {"l", gl}};
      WriteText(out_path.empty() ? "-" : out_path, Pretty(j));
      return 0;
    }

    json raw = ReadJsonFile(instance);
    InsertionInstance inst = InstanceFromJson(raw);

    if (*ingest) {
      WriteText(out_path.empty() ? "-" : out_path, Pretty(InstanceToJson(inst)));
      return 0;
    }
    if (*holes) {
      auto dual = BuildDual(inst.drawing);
      auto hd = ComputeHoles(inst, dual);
      json rep = HolesReport(inst, hd);
      if (holes_report) g.json = true;
      Emit(g, rep, "holes=" + std::to_string(hd.NumHoles()));
      return 0;
    }
    if (*crossable) {
      if (edge_i < 0 || edge_i >= inst.k()) throw InputError("--edge", "no added edge " + std::to_string(edge_i));
      Pipeline pl = RunPipeline(inst);
      const auto& cr = pl.crossable[edge_i];
      json hs = json::array();
      for (int h = 0; h < pl.holes.NumHoles(); ++h) {
        json parts = json::array();
        for (int e = 0; e < inst.drawing.num_edges; ++e)
          for (size_t p = 0; p < pl.holes.parts[h][e].size(); ++p) {
            if (!pl.holes.Torn(h, e) || !cr.part_crossable[h][e][p]) continue;
            const auto& ep = pl.holes.parts[h][e][p];
            parts.push_back({{"edge", e}, {"part", p}, {"first", ep.first}, {"last", ep.last}});
          }
        hs.push_back({{"hole", h}, {"crossable", parts}});
      }
      int ell = inst.EffectiveBudget(edge_i);
      json rep{{"edge", edge_i},
               {"holes", hs},
               {"count", cr.CountParts()},
               {"bound", CrossableBound(inst.k(), ell).str()},
               {"within_bound", CheckBound(cr.CountParts(), inst.k(), ell)}};
      if (!gpd_out.empty()) WriteText(gpd_out, GpdToDot(BuildGpd(inst, pl.holes), inst.drawing));
      Emit(g, rep, "crossable parts=" + std::to_string(cr.CountParts()));
      return 0;
    }
    if (*patchwork) {
      Pipeline pl = RunPipeline(inst);
      if (!dot_out.empty()) WriteText(dot_out, PatchworkToDot(pl.patchwork));
      if (!graphml_out.empty()) WriteText(graphml_out, PatchworkToGraphml(pl.patchwork));
      json rep = Diagnostics(pl.patchwork, inst, pl);
      Emit(g, rep,
           "patchwork vertices=" + std::to_string(pl.patchwork.NumVertices()) +
               " diameter_plus=" + std::to_string(rep["diameter_plus"].get<int>()));
      return 0;
    }

    RunOutput ro;
    if (*solve) {
      Variant v = VariantOrThrow(variant_str);
      sopts.check_templates = templates;
      json flags{{"variant", VariantName(v)}, {"max_nodes", sopts.max_nodes}, {"oracle_check", oracle_check},
                 {"jobs", sopts.jobs},         {"templates", templates}};
      ro = RunSolve(Context(g, "solve", raw, flags), inst, v, sopts, oracle_check);
    } else if (*solve1) {
      RepEngine e;
      if (engine_str == "auto") e = RepEngine::kAuto;
      else if (engine_str == "exact") e = RepEngine::kExact;
      else if (engine_str == "pruned") e = RepEngine::kPruned;
      else throw InputError("--engine", "unknown engine '" + engine_str + "'");
      json flags{{"engine", engine_str}, {"oracle_check", oracle_check}};
      ro = RunSolveSingle(Context(g, "solve1", raw, flags), inst, e, oracle_check);
    } else if (*oracle) {
      Variant v = VariantOrThrow(variant_str);
      ro = RunOracle(Context(g, "oracle", raw, {{"variant", VariantName(v)}}), inst, v);
    }
    if (!out_path.empty()) WriteText(out_path, Pretty(ro.report));
    Emit(g, ro.report, VerdictLine(ro.report));
    return ExitCodeFor(ro.status);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const GuardTripped& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kExitInput;
  } catch (const FatalDiagnostic& e) {
    std::cerr << "fatal diagnostic: " << e.what() << "\n";
    return kExitFatal;
  }
}
