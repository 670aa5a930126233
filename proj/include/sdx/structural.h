#ifndef SDX_STRUCTURAL_H_
#define SDX_STRUCTURAL_H_

#include <string>
#include <vector>

#include "sdx/extension.h"
#include "sdx/patchwork.h"

namespace sdx {

// Map involution, Euler and connectivity of the planarization, patchwork
// label counts against their closed forms, tracking pairs, thread ends on a
// single boundary piece, and (given a solution) declared crossings equal to
// the interleavings. Empty result means everything held.
std::vector<std::string> CheckStructure(const InsertionInstance& inst, const Pipeline& pl,
                                        const Extension* solution = nullptr);

}  // namespace sdx

#endif  // SDX_STRUCTURAL_H_
