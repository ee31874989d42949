#include <set>
#include <string>

#include "json.hpp"
#include "octa/diagram.hpp"
#include "octa/numeric.hpp"

namespace octa {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw InputError(where + ": unknown field '" + key + "'");
  }
}

long segment_id(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": segment id must be an integer");
  return v.get<long>();
}

std::vector<long> segment_list(const json& obj, const char* key) {
  std::vector<long> out;
  if (!obj.contains(key)) return out;
  const json& arr = obj.at(key);
  if (!arr.is_array()) throw InputError(std::string(key) + ": expected a list");
  for (const auto& v : arr) out.push_back(segment_id(v, key));
  return out;
}

}  // namespace

Diagram parse_diagram(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("diagram syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  reject_unknown(doc, {"crossings", "boundary_in", "boundary_out", "closed_loops", "base_region_hint"},
                 "diagram");
  DiagramSpec spec;
  if (doc.contains("crossings")) {
    const json& xs = doc.at("crossings");
    if (!xs.is_array()) throw InputError("crossings: expected a list");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const json& x = xs[i];
      const std::string where = "crossings[" + std::to_string(i) + "]";
      reject_unknown(x, {"sign", "s1", "s2", "s1p", "s2p", "ccw"}, where);
      for (const char* key : {"sign", "s1", "s2", "s1p", "s2p", "ccw"}) {
        if (!x.contains(key)) throw InputError(where + ": missing field '" + key + "'");
      }
      DiagramSpec::CrossingSpec c;
      if (!x.at("sign").is_number_integer()) throw InputError(where + ": sign must be +1 or -1");
      c.sign = x.at("sign").get<int>();
      c.s1 = segment_id(x.at("s1"), where + ".s1");
      c.s2 = segment_id(x.at("s2"), where + ".s2");
      c.s1p = segment_id(x.at("s1p"), where + ".s1p");
      c.s2p = segment_id(x.at("s2p"), where + ".s2p");
      const json& ccw = x.at("ccw");
      if (!ccw.is_array() || ccw.size() != 4) {
        throw InputError(where + ".ccw: expected four segment ids");
      }
      for (int k = 0; k < 4; ++k) c.ccw[k] = segment_id(ccw[k], where + ".ccw");
      spec.crossings.push_back(c);
    }
  }
  spec.boundary_in = segment_list(doc, "boundary_in");
  spec.boundary_out = segment_list(doc, "boundary_out");
  spec.closed_loops = segment_list(doc, "closed_loops");
  if (doc.contains("base_region_hint")) {
    const json& h = doc.at("base_region_hint");
    reject_unknown(h, {"segment", "side"}, "base_region_hint");
    if (!h.contains("segment")) throw InputError("base_region_hint: missing field 'segment'");
    BaseHint hint;
    hint.segment = segment_id(h.at("segment"), "base_region_hint.segment");
    const std::string side = h.value("side", std::string("above"));
    if (side != "above" && side != "below") {
      throw InputError("base_region_hint.side: expected \"above\" or \"below\"");
    }
    hint.above = side == "above";
    spec.base_hint = hint;
  }
  return make_diagram(spec);
}

}  // namespace octa
