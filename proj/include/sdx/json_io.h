#ifndef SDX_JSON_IO_H_
#define SDX_JSON_IO_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "sdx/drawing.h"
#include "sdx/geometry.h"

namespace sdx {

using Json = nlohmann::json;

struct ParsedMap {
  CombinatorialMap map;
  std::vector<Role> role;  // per vertex
  std::vector<int> edge_of;
};

// Map schema: {"darts","twin","rot","vertex_of","roles","edge_of",
// "outer_face_dart"}; all arrays have one entry per dart. Throws InputError
// naming the offending position.
ParsedMap ParseMapJson(const Json& j);
Json DrawingToJson(const Drawing& d);

StraightLineInput StraightLineFromJson(const Json& j);
Json StraightLineToJson(const StraightLineInput& in);

// Accepts either schema; coordinate input is ingested on the fly. Budgets
// and variant are optional (defaults: 0 each, slcei).
InsertionInstance InstanceFromJson(const Json& j);
Json InstanceToJson(const InsertionInstance& inst);

Json ReadJsonFile(const std::string& path);  // "-" reads stdin
std::string Digest(const Json& j);           // FNV-1a of the compact dump

}  // namespace sdx

#endif  // SDX_JSON_IO_H_
