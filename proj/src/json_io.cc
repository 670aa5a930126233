#include "sdx/json_io.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sdx/errors.h"

namespace sdx {

namespace {

std::string S(size_t x) { return std::to_string(x); }

const Json& Field(const Json& j, const std::string& key) {
  if (!j.is_object()) throw InputError("", "top level must be an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError("/" + key, "missing field");
  return *it;
}

int AsInt(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where, "expected an integer");
  auto x = v.get<int64_t>();
  if (x < INT32_MIN || x > INT32_MAX) throw InputError(where, "integer out of range");
  return static_cast<int>(x);
}

std::vector<int> IntArray(const Json& j, const std::string& key, int len) {
  const Json& a = Field(j, key);
  if (!a.is_array()) throw InputError("/" + key, "expected an array");
  if (len >= 0 && static_cast<int>(a.size()) != len)
    throw InputError("/" + key, "expected " + S(len) + " entries, got " + S(a.size()));
  std::vector<int> out;
  for (size_t i = 0; i < a.size(); ++i) out.push_back(AsInt(a[i], "/" + key + "/" + S(i)));
  return out;
}

std::vector<std::pair<int, int>> PairArray(const Json& a, const std::string& key) {
  if (!a.is_array()) throw InputError("/" + key, "expected an array");
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < a.size(); ++i) {
    std::string w = "/" + key + "/" + S(i);
    if (!a[i].is_array() || a[i].size() != 2) throw InputError(w, "expected a pair");
    out.push_back({AsInt(a[i][0], w + "/0"), AsInt(a[i][1], w + "/1")});
  }
  return out;
}

void ReadExtras(const Json& j, int k, std::vector<int>& budgets, Variant& variant) {
  if (j.contains("budgets")) {
    budgets = IntArray(j, "budgets", -1);
  } else {
    budgets.assign(k, 0);
  }
  variant = Variant::kSLCEI;
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw InputError("/variant", "expected a string");
    auto v = ParseVariant(j["variant"].get<std::string>());
    if (!v) throw InputError("/variant", "unknown variant '" + j["variant"].get<std::string>() + "'");
    variant = *v;
  }
}

}  // namespace

ParsedMap ParseMapJson(const Json& j) {
  ParsedMap pm;
  int n = AsInt(Field(j, "darts"), "/darts");
  if (n <= 0) throw InputError("/darts", "must be positive");
  pm.map.num_darts = n;
  pm.map.twin = IntArray(j, "twin", n);
  pm.map.rot = IntArray(j, "rot", n);
  pm.map.vertex_of = IntArray(j, "vertex_of", n);
  pm.edge_of = IntArray(j, "edge_of", n);
  pm.map.outer_face_dart = AsInt(Field(j, "outer_face_dart"), "/outer_face_dart");
  if (pm.map.outer_face_dart < 0 || pm.map.outer_face_dart >= n)
    throw InputError("/outer_face_dart", "dart out of range");
  for (int d = 0; d < n; ++d) {
    std::string w = "/" + S(d);
    if (pm.map.twin[d] < 0 || pm.map.twin[d] >= n) throw InputError("/twin" + w, "dart out of range");
    if (pm.map.rot[d] < 0 || pm.map.rot[d] >= n) throw InputError("/rot" + w, "dart out of range");
    if (pm.map.vertex_of[d] < 0 || pm.map.vertex_of[d] >= n)
      throw InputError("/vertex_of" + w, "vertex id out of range");
  }
  const Json& roles = Field(j, "roles");
  if (!roles.is_array() || static_cast<int>(roles.size()) != n)
    throw InputError("/roles", "expected " + S(n) + " entries");
  int nv = pm.map.NumVertices();
  pm.role.assign(nv, Role::kReal);
  std::vector<int> set_by(nv, -1);
  for (int d = 0; d < n; ++d) {
    std::string w = "/roles/" + S(d);
    if (!roles[d].is_string()) throw InputError(w, "expected \"real\" or \"crossing\"");
    auto r = roles[d].get<std::string>();
    Role role;
    if (r == "real") role = Role::kReal;
    else if (r == "crossing") role = Role::kCrossing;
    else throw InputError(w, "expected \"real\" or \"crossing\"");
    int v = pm.map.vertex_of[d];
    if (set_by[v] >= 0 && pm.role[v] != role)
      throw InputError(w, "role disagrees with dart " + S(set_by[v]) + " of the same vertex");
    pm.role[v] = role;
    set_by[v] = d;
  }
  return pm;
}

Json DrawingToJson(const Drawing& dr) {
  Json j;
  const auto& m = dr.map;
  j["darts"] = m.num_darts;
  j["twin"] = m.twin;
  j["rot"] = m.rot;
  j["vertex_of"] = m.vertex_of;
  Json roles = Json::array();
  for (int d = 0; d < m.num_darts; ++d)
    roles.push_back(dr.role[m.vertex_of[d]] == Role::kReal ? "real" : "crossing");
  j["roles"] = roles;
  j["edge_of"] = dr.edge_of;
  j["outer_face_dart"] = m.outer_face_dart;
  return j;
}

StraightLineInput StraightLineFromJson(const Json& j) {
  StraightLineInput in;
  const Json& pts = Field(j, "points");
  if (!pts.is_array()) throw InputError("/points", "expected an array");
  for (size_t i = 0; i < pts.size(); ++i) {
    std::string w = "/points/" + S(i);
    if (!pts[i].is_array() || pts[i].size() != 2) throw InputError(w, "expected [x, y]");
    for (int c = 0; c < 2; ++c)
      if (!pts[i][c].is_number_integer())
        throw InputError(w + "/" + S(c), "coordinates must be integers");
    int64_t x = pts[i][0].get<int64_t>(), y = pts[i][1].get<int64_t>();
    constexpr int64_t kLim = int64_t{1} << 28;
    if (x <= -kLim || x >= kLim || y <= -kLim || y >= kLim)
      throw InputError(w, "coordinate magnitude must stay below 2^28");
    in.points.push_back({x, y});
  }
  in.edges = PairArray(Field(j, "edges"), "edges");
  in.added = j.contains("added") ? PairArray(j["added"], "added")
                                 : std::vector<std::pair<int, int>>{};
  ReadExtras(j, static_cast<int>(in.added.size()), in.budgets, in.variant);
  return in;
}

Json StraightLineToJson(const StraightLineInput& in) {
  Json j;
  Json pts = Json::array();
  for (auto& p : in.points) pts.push_back({p[0], p[1]});
  j["points"] = pts;
  Json e = Json::array();
  for (auto [u, v] : in.edges) e.push_back({u, v});
  j["edges"] = e;
  Json a = Json::array();
  for (auto [u, v] : in.added) a.push_back({u, v});
  j["added"] = a;
  j["budgets"] = in.budgets;
  j["variant"] = VariantName(in.variant);
  return j;
}

InsertionInstance InstanceFromJson(const Json& j) {
  if (!j.is_object()) throw InputError("", "top level must be an object");
  if (j.contains("points")) return IngestStraightLine(StraightLineFromJson(j));
  ParsedMap pm = ParseMapJson(j);
  auto res = ValidateDrawing(pm.map, pm.role, pm.edge_of);
  if (!res.ok()) {
    const auto& is = res.issues.front();
    throw InputError("", "invalid drawing [" + is.code + "]: " + is.message);
  }
  InsertionInstance inst;
  inst.drawing = std::move(*res.drawing);
  inst.added = j.contains("added") ? PairArray(j["added"], "added")
                                   : std::vector<std::pair<int, int>>{};
  ReadExtras(j, inst.k(), inst.budgets, inst.variant);
  CheckInstance(inst);
  return inst;
}

Json InstanceToJson(const InsertionInstance& inst) {
  Json j = DrawingToJson(inst.drawing);
  Json a = Json::array();
  for (auto [u, v] : inst.added) a.push_back({u, v});
  j["added"] = a;
  j["budgets"] = inst.budgets;
  j["variant"] = VariantName(inst.variant);
  return j;
}

Json ReadJsonFile(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(path);
    if (!f) throw InputError("", "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("byte " + S(e.byte), "JSON syntax error");
  }
}

std::string Digest(const Json& j) {
  std::string s = j.dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sdx
