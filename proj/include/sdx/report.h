#ifndef SDX_REPORT_H_
#define SDX_REPORT_H_

#include <optional>
#include <string>

#include "json.hpp"
#include "sdx/patchwork.h"
#include "sdx/single_edge.h"
#include "sdx/solver.h"

namespace sdx {

// Crossable-part counts against their bound, G^p_d and P+ diameters. Never
// throws on a violated bound; the flags say what held.
nlohmann::json BoundsReport(const InsertionInstance& inst, const Pipeline& pl);

struct RunContext {
  std::string command;
  nlohmann::json instance_json;  // as read, so the report can be replayed
  nlohmann::json flags = nlohmann::json::object();
  std::optional<uint64_t> seed;
  bool timings = false;
};

struct RunOutput {
  nlohmann::json report;  // digest-covered part plus "digest", then "timing" if asked
  SolveStatus status = SolveStatus::kInfeasible;
};

// Both throw FatalDiagnostic on oracle disagreement.
RunOutput RunSolve(const RunContext& ctx, const InsertionInstance& inst, Variant variant, const SolveOptions& opts,
                   bool oracle_check);
RunOutput RunSolveSingle(const RunContext& ctx, const InsertionInstance& inst, RepEngine engine, bool oracle_check);
// Brute force for k > 1 (or any k within its guards), exhaustive colourful
// search for k = 1 as a second opinion.
RunOutput RunOracle(const RunContext& ctx, const InsertionInstance& inst, Variant variant);

// Adds "digest" over everything present; call before attaching timing.
void Seal(nlohmann::json& report);
int ExitCodeFor(SolveStatus s);

}  // namespace sdx

#endif  // SDX_REPORT_H_
