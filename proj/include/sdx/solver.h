#ifndef SDX_SOLVER_H_
#define SDX_SOLVER_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdx/extension.h"
#include "sdx/patchwork.h"

namespace sdx {

using BudgetProfile = std::vector<int>;

// Ascending by total, then lexicographic. Entries run 0..EffectiveBudget(i);
// SCEI keeps only totals within the global budget.
std::vector<BudgetProfile> EnumerateBudgetProfiles(const InsertionInstance& inst, Variant variant);

// A walk in P: real, shadow, cell, (shadow, segment, shadow, cell)*, shadow, real.
struct PWalk {
  std::vector<int> verts;
  bool operator==(const PWalk&) const = default;
};
struct Preimage {
  std::vector<PWalk> walks;
};

// Label-patterned walks for added edge i with exactly ell_prime crossings,
// using slot 0 of every segment. Deterministic order.
std::vector<PWalk> EnumerateWalks(const Pipeline& pl, const InsertionInstance& inst, Variant variant, int i,
                                  int ell_prime, int64_t cap = 1000000);

bool CheckPreimageShape(const Pipeline& pl, const InsertionInstance& inst, const Preimage& pre,
                        std::string* why = nullptr);

// Crossings are read off the cell rotations of P.
Extension Assemble(const Pipeline& pl, const InsertionInstance& inst, const Preimage& pre);

struct SolveOptions {
  int64_t max_nodes = 10000000;
  bool oracle_fallback = true;   // consult brute force before answering infeasible
  bool check_templates = false;  // match preimages against enumerated template traces (small k, ell only)
  int jobs = 1;
};

enum class SolveStatus { kFeasible, kInfeasible, kCapExceeded };
const char* StatusName(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<Extension> solution;
  BudgetProfile profile;   // profile of the solution, or the frontier on cap
  int64_t nodes = 0;
  nlohmann::json stats = nlohmann::json::object();
};

// Pl must come from RunPipeline on inst with inst.variant == variant.
SolveResult SolveWithPipeline(const Pipeline& pl, const InsertionInstance& inst, Variant variant,
                              const SolveOptions& opts = {});
SolveResult Solve(const InsertionInstance& inst, Variant variant, const SolveOptions& opts = {});

// All preimages for one profile (diagnostic, capped).
std::vector<Preimage> StreamPreimages(const Pipeline& pl, const InsertionInstance& inst, Variant variant,
                                      const BudgetProfile& profile, int64_t cap);

// Abstract (T, alpha, beta) keys. Guarded to k <= 2 and total profile <= 2.
using TemplateKey = std::string;
struct TemplateSet {
  std::set<TemplateKey> keys;
  int64_t Count() const { return static_cast<int64_t>(keys.size()); }
};
TemplateSet EnumerateTemplateTraces(int k, const BudgetProfile& profile);
// endpoint identities taken from the instance so shared endpoints classify correctly
TemplateKey TemplateOf(const Pipeline& pl, const InsertionInstance& inst, const Preimage& pre);

}  // namespace sdx

#endif  // SDX_SOLVER_H_
