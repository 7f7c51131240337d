#include "bioinstruct/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "bioinstruct/error.hpp"
#include "bioinstruct/jsonl.hpp"

namespace bioinstruct {

std::string format_metric(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string EvalReport::to_json_string() const {
  json j;
  j["config_digest"] = config_digest;
  json arr = json::array();
  for (const auto& e : results) {
    json ej;
    ej["system"] = e.system;
    ej["dataset"] = e.dataset;
    ej["task"] = e.task;
    ej["metric_name"] = e.metric_name;
    ej["value"] = e.value;
    if (e.malformed_rate) {
      ej["malformed_rate"] = *e.malformed_rate;
    } else {
      ej["malformed_rate"] = nullptr;
    }
    ej["malformed_count"] = e.malformed_count;
    ej["n"] = e.n;
    arr.push_back(std::move(ej));
  }
  j["results"] = std::move(arr);
  json counts;
  counts["correct"] = correct;
  counts["wrong"] = wrong;
  counts["failed"] = failed;
  j["counts"] = std::move(counts);
  return j.dump(2);
}

EvalReport EvalReport::from_json_string(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("report is not a JSON object");
  }
  EvalReport r;
  try {
    r.config_digest = j.value("config_digest", "");
    for (const auto& ej : j.at("results")) {
      ReportEntry e;
      e.system = ej.at("system").get<std::string>();
      e.dataset = ej.at("dataset").get<std::string>();
      e.task = ej.at("task").get<std::string>();
      e.metric_name = ej.at("metric_name").get<std::string>();
      e.value = ej.at("value").get<double>();
      if (ej.contains("malformed_rate") && !ej["malformed_rate"].is_null()) {
        e.malformed_rate = ej["malformed_rate"].get<double>();
      }
      e.malformed_count = ej.value("malformed_count", std::uint64_t{0});
      e.n = ej.value("n", std::uint64_t{0});
      r.results.push_back(std::move(e));
    }
    if (j.contains("counts")) {
      r.correct = j["counts"].value("correct", std::uint64_t{0});
      r.wrong = j["counts"].value("wrong", std::uint64_t{0});
      r.failed = j["counts"].value("failed", std::uint64_t{0});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report: ") + e.what());
  }
  return r;
}

namespace {

struct RowKey {
  std::string task;
  std::string dataset;
  std::string metric;

  bool operator==(const RowKey&) const = default;
};

std::string markdown_table(
    const std::vector<std::string>& systems,
    const std::vector<std::pair<std::string, std::string>>& row_labels,
    const std::vector<std::vector<std::string>>& cells) {
  std::string out = "| Type | Task |";
  for (const auto& s : systems) out += " " + s + " |";
  out += "\n|---|---|";
  for (std::size_t i = 0; i < systems.size(); ++i) out += "---|";
  out += "\n";
  for (std::size_t r = 0; r < row_labels.size(); ++r) {
    out += "| " + row_labels[r].first + " | " + row_labels[r].second + " |";
    for (const auto& cell : cells[r]) out += " " + cell + " |";
    out += "\n";
  }
  return out;
}

}  // namespace

std::string EvalReport::to_markdown() const {
  std::vector<std::string> systems;
  std::vector<RowKey> rows;
  std::map<std::pair<std::string, std::string>, std::size_t> metrics_per_dataset;
  for (const auto& e : results) {
    if (std::find(systems.begin(), systems.end(), e.system) == systems.end()) {
      systems.push_back(e.system);
    }
    const RowKey key{e.task, e.dataset, e.metric_name};
    if (std::find(rows.begin(), rows.end(), key) == rows.end()) {
      rows.push_back(key);
      ++metrics_per_dataset[{e.task, e.dataset}];
    }
  }

  const auto find_entry = [this](const RowKey& key, const std::string& system)
      -> const ReportEntry* {
    for (const auto& e : results) {
      if (e.system == system && e.task == key.task &&
          e.dataset == key.dataset && e.metric_name == key.metric) {
        return &e;
      }
    }
    return nullptr;
  };

  std::vector<std::pair<std::string, std::string>> row_labels;
  std::vector<std::vector<std::string>> cells;
  bool any_malformed = false;
  for (const auto& key : rows) {
    std::string label = key.dataset;
    if (metrics_per_dataset[{key.task, key.dataset}] > 1) {
      label += " (" + key.metric + ")";
    }
    row_labels.emplace_back(key.task, label);
    std::vector<std::string> row;
    for (const auto& s : systems) {
      const ReportEntry* e = find_entry(key, s);
      row.push_back(e == nullptr ? "-" : format_metric(e->value));
      if (e != nullptr && e->malformed_rate) any_malformed = true;
    }
    cells.push_back(std::move(row));
  }

  std::string out = "## Results\n\n";
  out += markdown_table(systems, row_labels, cells);

  if (any_malformed) {
    // Rate rows collapse the per-metric dimension; one row per dataset.
    std::vector<std::pair<std::string, std::string>> seen;
    std::vector<std::pair<std::string, std::string>> mrows;
    std::vector<std::vector<std::string>> mcells;
    for (const auto& key : rows) {
      const std::pair<std::string, std::string> dkey{key.task, key.dataset};
      if (std::find(seen.begin(), seen.end(), dkey) != seen.end()) continue;
      seen.push_back(dkey);
      mrows.push_back(dkey);
      std::vector<std::string> row;
      for (const auto& s : systems) {
        const ReportEntry* e = find_entry(key, s);
        row.push_back(e != nullptr && e->malformed_rate
                          ? format_metric(*e->malformed_rate)
                          : "-");
      }
      mcells.push_back(std::move(row));
    }
    out += "\n## Malformed output rate (%)\n\n";
    out += markdown_table(systems, mrows, mcells);
  }
  return out;
}

}  // namespace bioinstruct
