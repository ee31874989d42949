#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace octa {

/// One pipeline stage: named residuals plus free-form facts.
struct Stage {
  std::string name;
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::pair<std::string, std::string>> facts;
  bool operator==(const Stage&) const = default;
};

struct RunReport {
  std::string command;
  std::string inputs_digest;  // FNV-1a 64 of the input files, hex
  std::uint64_t seed = 0;
  std::vector<Stage> stages;
  std::vector<std::pair<std::string, bool>> verdicts;
  std::vector<std::pair<std::string, double>> timings;  // seconds; omitted from json unless asked
  std::vector<std::string> messages;
  int exit_code = 0;
  bool operator==(const RunReport&) const = default;

  Stage& stage(const std::string& name);
  void verdict(const std::string& name, bool value);
};

enum class ReportFormat { Text, Json };

/// Renders a report. The json form is deterministic and, with timings
/// included, parses back to an equal report.
std::string emit_report(const RunReport& r, ReportFormat format, bool with_timings = false);
RunReport parse_report(std::string_view json_text);

std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 14695981039346656037ull);
std::string hex64(std::uint64_t v);

}  // namespace octa
