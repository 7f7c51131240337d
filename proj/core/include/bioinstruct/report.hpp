#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bioinstruct {

// One scored cell: a metric for one dataset under one evaluated system.
// Values are on the 0-100 scale used for display.
struct ReportEntry {
  std::string system;
  std::string dataset;
  std::string task;  // NER | RE | NLI | DOC_CLS | QA
  std::string metric_name;
  double value = 0.0;
  std::optional<double> malformed_rate;  // percent, when measured
  std::uint64_t malformed_count = 0;
  std::uint64_t n = 0;
};

struct EvalReport {
  std::string config_digest;
  std::vector<ReportEntry> results;
  std::uint64_t correct = 0;
  std::uint64_t wrong = 0;
  std::uint64_t failed = 0;

  std::string to_json_string() const;
  static EvalReport from_json_string(const std::string& text);

  // Markdown table in the classic benchmark layout: one row per
  // (task, dataset, metric), one column per system, cells to 2 decimals.
  // A second table lists malformed rates when any were measured.
  std::string to_markdown() const;
};

// Formats a value exactly as report tables render it (2 decimals).
std::string format_metric(double value);

}  // namespace bioinstruct
