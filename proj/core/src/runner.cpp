#include "bioinstruct/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <set>
#include <thread>

#include "bioinstruct/digest.hpp"
#include "bioinstruct/error.hpp"
#include "bioinstruct/jsonl.hpp"

namespace bioinstruct {

namespace {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_tokens(const std::string& input) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start < input.size()) {
    const std::size_t end = input.find(' ', start);
    if (end == std::string::npos) {
      tokens.push_back(input.substr(start));
      break;
    }
    tokens.push_back(input.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

struct Generation {
  std::string text;
  std::string error;
  bool failed = false;
};

}  // namespace

bool qa_containment_match(std::string_view generation, std::string_view gold) {
  const std::string_view g = trim_view(generation);
  const std::string_view a = trim_view(gold);
  if (g == a) return true;
  return !a.empty() && g.find(a) != std::string_view::npos;
}

RunResult run_eval(const std::vector<InstructionRecord>& records,
                   const std::map<std::string, LabelScheme>& schemes,
                   Backend& backend, const RunOptions& options) {
  if (options.parallelism < 1) {
    throw ValidationError("parallelism must be at least 1");
  }

  // Results are keyed and ordered by record id, so the report does not
  // depend on input order or scheduling.
  std::vector<const InstructionRecord*> ordered;
  ordered.reserve(records.size());
  std::set<std::string> ids;
  for (const auto& r : records) {
    if (r.meta.split == Split::Train) {
      throw ValidationError("record '" + r.meta.source_id +
                            "' is a train-split record; evaluation takes only "
                            "dev or test records");
    }
    if (!ids.insert(r.meta.source_id).second) {
      throw DataError("duplicate record id '" + r.meta.source_id + "'");
    }
    if (r.meta.task_kind != TaskKind::Qa &&
        schemes.count(r.meta.source_dataset) == 0) {
      throw DataError("no label scheme for dataset '" + r.meta.source_dataset +
                      "'");
    }
    ordered.push_back(&r);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const InstructionRecord* a, const InstructionRecord* b) {
              return a->meta.source_id < b->meta.source_id;
            });

  // Fan out generation requests, at most `parallelism` in flight.
  std::vector<Generation> generations(ordered.size());
  {
    std::atomic<std::size_t> cursor{0};
    const std::size_t workers =
        std::min(options.parallelism, std::max<std::size_t>(ordered.size(), 1));
    const auto work = [&] {
      for (;;) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= ordered.size()) return;
        GenerationRequest request = options.request_defaults;
        request.prompt =
            render_prompt(*ordered[i], /*include_output=*/false,
                          options.prompt_style);
        try {
          generations[i].text = backend.generate(*ordered[i], request);
        } catch (const std::exception& e) {
          generations[i].failed = true;
          generations[i].error = e.what();
        }
      }
    };
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
  }

  // Parse and score sequentially in id order.
  RunResult result;
  struct NerAccum {
    std::vector<std::vector<std::string>> gold;
    std::vector<std::vector<std::string>> pred;
  };
  struct FlatAccum {
    std::vector<std::string> gold;
    std::vector<std::string> pred;
  };
  struct SetAccum {
    std::vector<std::set<std::string>> gold;
    std::vector<std::set<std::string>> pred;
  };
  std::map<std::string, NerAccum> ner_accum;
  std::map<std::string, FlatAccum> flat_accum;
  std::map<std::string, SetAccum> set_accum;
  std::map<std::string, std::uint64_t> qa_correct;

  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const InstructionRecord& record = *ordered[i];
    const std::string& dataset = record.meta.source_dataset;
    DatasetScore& score = result.per_dataset[dataset];
    score.task = record.meta.task_kind;

    LogEntry entry;
    entry.record_id = record.meta.source_id;
    entry.dataset = dataset;
    entry.prompt_sha256 = sha256_hex(
        render_prompt(record, /*include_output=*/false, options.prompt_style));
    entry.parsed.record_id = record.meta.source_id;
    entry.parsed.task_kind = record.meta.task_kind;

    if (generations[i].failed) {
      ++score.failed;
      ++result.failed;
      entry.status = "failed";
      entry.error = generations[i].error;
      result.log.push_back(std::move(entry));
      continue;
    }
    const std::string& generation = generations[i].text;
    entry.generation = generation;

    const LabelScheme* scheme = nullptr;
    if (const auto it = schemes.find(dataset); it != schemes.end()) {
      scheme = &it->second;
    }

    bool correct = false;
    switch (record.meta.task_kind) {
      case TaskKind::Ner: {
        const auto tokens = split_tokens(record.input);
        ParsedPrediction gold =
            parse_ner_generation(record.output, tokens, *scheme);
        if (gold.malformed) {
          throw DataError("record '" + record.meta.source_id +
                          "' has an output that is not a valid serialization");
        }
        entry.parsed = parse_ner_generation(generation, tokens, *scheme);
        entry.parsed.record_id = record.meta.source_id;
        auto& acc = ner_accum[dataset];
        correct = entry.parsed.labels == gold.labels;
        acc.gold.push_back(std::move(gold.labels));
        acc.pred.push_back(entry.parsed.labels);
        break;
      }
      case TaskKind::Re:
      case TaskKind::Nli: {
        entry.parsed = parse_classification_generation(generation, *scheme);
        entry.parsed.record_id = record.meta.source_id;
        auto& acc = flat_accum[dataset];
        correct = entry.parsed.label == record.output;
        acc.gold.push_back(record.output);
        acc.pred.push_back(entry.parsed.label);
        break;
      }
      case TaskKind::DocCls: {
        ParsedPrediction gold =
            parse_multilabel_generation(record.output, *scheme);
        if (gold.malformed) {
          throw DataError("record '" + record.meta.source_id +
                          "' has an output that is not a valid serialization");
        }
        entry.parsed = parse_multilabel_generation(generation, *scheme);
        entry.parsed.record_id = record.meta.source_id;
        auto& acc = set_accum[dataset];
        std::set<std::string> gold_set(gold.label_set.begin(),
                                       gold.label_set.end());
        std::set<std::string> pred_set(entry.parsed.label_set.begin(),
                                       entry.parsed.label_set.end());
        correct = pred_set == gold_set;
        acc.gold.push_back(std::move(gold_set));
        acc.pred.push_back(std::move(pred_set));
        break;
      }
      case TaskKind::Qa: {
        correct = qa_containment_match(generation, record.output);
        if (correct) ++qa_correct[dataset];
        break;
      }
    }

    ++score.n;
    if (entry.parsed.malformed) ++score.malformed;
    entry.status = correct ? "correct" : "wrong";
    if (correct) {
      ++result.correct;
    } else {
      ++result.wrong;
    }
    result.log.push_back(std::move(entry));
  }

  // Aggregate metrics per dataset.
  const std::string system = options.system_name.empty()
                                 ? backend.describe()
                                 : options.system_name;
  for (auto& [dataset, score] : result.per_dataset) {
    const double malformed_rate =
        score.n == 0 ? 0.0
                     : 100.0 * static_cast<double>(score.malformed) /
                           static_cast<double>(score.n);
    const auto add_entry = [&](const std::string& metric, double value01) {
      ReportEntry e;
      e.system = system;
      e.dataset = dataset;
      e.task = std::string(to_string(score.task));
      e.metric_name = metric;
      e.value = 100.0 * value01;
      e.malformed_rate = malformed_rate;
      e.malformed_count = score.malformed;
      e.n = score.n;
      result.report.results.push_back(std::move(e));
    };
    switch (score.task) {
      case TaskKind::Ner: {
        const auto& acc = ner_accum[dataset];
        score.entity = entity_prf(acc.gold, acc.pred, options.chunk_mode);
        add_entry("entity_micro_f1", score.entity.f1());
        break;
      }
      case TaskKind::Re:
      case TaskKind::Nli: {
        const auto& acc = flat_accum[dataset];
        const auto& scheme = schemes.at(dataset);
        score.accuracy = label_accuracy(acc.gold, acc.pred);
        score.micro = micro_f1_labels(acc.gold, acc.pred, scheme);
        add_entry("accuracy", score.accuracy);
        add_entry("micro_f1", score.micro.f1());
        break;
      }
      case TaskKind::DocCls: {
        const auto& acc = set_accum[dataset];
        score.multilabel = multilabel_prf(acc.gold, acc.pred);
        add_entry("multilabel_micro_f1", score.multilabel.f1());
        break;
      }
      case TaskKind::Qa: {
        score.accuracy =
            score.n == 0 ? 0.0
                         : static_cast<double>(qa_correct[dataset]) /
                               static_cast<double>(score.n);
        add_entry("qa_accuracy_experimental", score.accuracy);
        break;
      }
    }
  }

  result.report.correct = result.correct;
  result.report.wrong = result.wrong;
  result.report.failed = result.failed;

  // Configuration digest: everything that determines the scores except the
  // parallelism level, which must not affect the report.
  {
    Sha256 h;
    for (const auto* r : ordered) {
      h.update(serialize_record(*r));
      h.update("\n");
    }
    json cfg;
    cfg["records_sha256"] = h.hex_digest();
    cfg["system"] = system;
    cfg["chunk_mode"] = std::string(to_string(options.chunk_mode));
    cfg["max_new_tokens"] = options.request_defaults.max_new_tokens;
    cfg["temperature"] = options.request_defaults.temperature;
    cfg["stop"] = options.request_defaults.stop;
    result.report.config_digest = sha256_hex(cfg.dump());
  }
  return result;
}

std::string RunResult::log_jsonl(bool verbose) const {
  std::string out;
  for (const auto& e : log) {
    json j;
    j["record_id"] = e.record_id;
    j["dataset"] = e.dataset;
    j["prompt_sha256"] = e.prompt_sha256;
    j["generation"] = e.generation;
    json parsed;
    switch (e.parsed.task_kind) {
      case TaskKind::Ner:
        parsed["labels"] = e.parsed.labels;
        break;
      case TaskKind::Re:
      case TaskKind::Nli:
        parsed["label"] = e.parsed.label;
        break;
      case TaskKind::DocCls:
        parsed["label_set"] = e.parsed.label_set;
        break;
      case TaskKind::Qa:
        break;
    }
    j["parsed"] = std::move(parsed);
    j["malformed"] = e.parsed.malformed;
    j["status"] = e.status;
    if (!e.error.empty()) j["error"] = e.error;
    if (verbose && !e.parsed.notes.empty()) j["notes"] = e.parsed.notes;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace bioinstruct
