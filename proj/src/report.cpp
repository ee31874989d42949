#include "octa/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "octa/numeric.hpp"

namespace octa {

namespace {

using nlohmann::ordered_json;

// Non-finite values have no json number form.
ordered_json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const ordered_json& v) {
  if (v.is_number()) return v.get<double>();
  const std::string s = v.get<std::string>();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  throw InputError("report: bad number '" + s + "'");
}

}  // namespace

Stage& RunReport::stage(const std::string& name) {
  for (Stage& s : stages) {
    if (s.name == name) return s;
  }
  stages.push_back({name, {}, {}});
  return stages.back();
}

void RunReport::verdict(const std::string& name, bool value) {
  for (auto& [k, v] : verdicts) {
    if (k == name) {
      v = value;
      return;
    }
  }
  verdicts.emplace_back(name, value);
}

std::string emit_report(const RunReport& r, ReportFormat format, bool with_timings) {
  if (format == ReportFormat::Json) {
    ordered_json doc;
    doc["command"] = r.command;
    doc["inputs_digest"] = r.inputs_digest;
    doc["seed"] = r.seed;
    doc["exit_code"] = r.exit_code;
    doc["stages"] = ordered_json::array();
    for (const Stage& s : r.stages) {
      ordered_json st;
      st["name"] = s.name;
      st["residuals"] = ordered_json::array();
      for (const auto& [k, v] : s.residuals) st["residuals"].push_back({{"name", k}, {"value", number(v)}});
      st["facts"] = ordered_json::array();
      for (const auto& [k, v] : s.facts) st["facts"].push_back({{"name", k}, {"value", v}});
      doc["stages"].push_back(st);
    }
    doc["verdicts"] = ordered_json::array();
    for (const auto& [k, v] : r.verdicts) doc["verdicts"].push_back({{"name", k}, {"value", v}});
    doc["messages"] = r.messages;
    if (with_timings) {
      doc["timings"] = ordered_json::array();
      for (const auto& [k, v] : r.timings) doc["timings"].push_back({{"name", k}, {"value", number(v)}});
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  if (!r.inputs_digest.empty()) out << "inputs: " << r.inputs_digest << "\n";
  out << "seed: " << r.seed << "\n";
  for (const Stage& s : r.stages) {
    out << "\n[" << s.name << "]\n";
    for (const auto& [k, v] : s.facts) out << "  " << k << ": " << v << "\n";
    for (const auto& [k, v] : s.residuals) {
      out << "  " << k << ": " << std::setprecision(3) << std::scientific << v << std::defaultfloat
          << "\n";
    }
  }
  if (!r.verdicts.empty()) {
    out << "\nverdicts:\n";
    for (const auto& [k, v] : r.verdicts) out << "  " << k << ": " << (v ? "yes" : "no") << "\n";
  }
  for (const std::string& m : r.messages) out << "note: " << m << "\n";
  if (with_timings && !r.timings.empty()) {
    out << "\ntimings:\n";
    for (const auto& [k, v] : r.timings) out << "  " << k << ": " << v << " s\n";
  }
  return out.str();
}

RunReport parse_report(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text.begin(), json_text.end());
  } catch (const ordered_json::parse_error& e) {
    throw InputError("report syntax error at byte " + std::to_string(e.byte));
  }
  try {
    RunReport r;
    r.command = doc.at("command").get<std::string>();
    r.inputs_digest = doc.at("inputs_digest").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.exit_code = doc.at("exit_code").get<int>();
    for (const auto& st : doc.at("stages")) {
      Stage s;
      s.name = st.at("name").get<std::string>();
      for (const auto& x : st.at("residuals")) {
        s.residuals.emplace_back(x.at("name").get<std::string>(), number_from(x.at("value")));
      }
      for (const auto& x : st.at("facts")) {
        s.facts.emplace_back(x.at("name").get<std::string>(), x.at("value").get<std::string>());
      }
      r.stages.push_back(std::move(s));
    }
    for (const auto& x : doc.at("verdicts")) {
      r.verdicts.emplace_back(x.at("name").get<std::string>(), x.at("value").get<bool>());
    }
    r.messages = doc.at("messages").get<std::vector<std::string>>();
    if (doc.contains("timings")) {
      for (const auto& x : doc.at("timings")) {
        r.timings.emplace_back(x.at("name").get<std::string>(), number_from(x.at("value")));
      }
    }
    return r;
  } catch (const ordered_json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h) {
  for (const unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace octa
