#pragma once

#include <map>
#include <string>
#include <vector>

#include "bioinstruct/backend.hpp"
#include "bioinstruct/examples.hpp"
#include "bioinstruct/genparse.hpp"
#include "bioinstruct/metrics.hpp"
#include "bioinstruct/report.hpp"
#include "bioinstruct/scheme.hpp"
#include "bioinstruct/templates.hpp"

namespace bioinstruct {

// Zero-shot evaluation: render prompts without the gold output, fan requests
// out to a backend with bounded parallelism, parse the generations back into
// structured predictions, and score them.

struct RunOptions {
  std::size_t parallelism = 1;
  ChunkMode chunk_mode = ChunkMode::Lenient;
  bool verbose = false;  // include parser diagnostics in the per-record log
  GenerationRequest request_defaults;
  PromptStyle prompt_style;
  std::string system_name;  // defaults to backend.describe()
};

// Aggregates for one dataset. `accuracy` is label accuracy for RE/NLI and
// containment accuracy for QA (experimental).
struct DatasetScore {
  TaskKind task = TaskKind::Ner;
  std::uint64_t n = 0;  // scored records (failures excluded)
  std::uint64_t malformed = 0;
  std::uint64_t failed = 0;
  PrfResult entity;      // NER
  PrfResult micro;       // RE / NLI
  PrfResult multilabel;  // DOC_CLS
  double accuracy = 0.0;
};

struct LogEntry {
  std::string record_id;
  std::string dataset;
  std::string prompt_sha256;
  std::string generation;
  ParsedPrediction parsed;
  std::string status;  // correct | wrong | failed
  std::string error;   // failure reason when status == failed
};

struct RunResult {
  EvalReport report;
  std::map<std::string, DatasetScore> per_dataset;
  std::vector<LogEntry> log;  // ordered by record id
  std::uint64_t correct = 0;
  std::uint64_t wrong = 0;
  std::uint64_t failed = 0;

  // Per-record log as JSONL; parser notes included when verbose.
  std::string log_jsonl(bool verbose) const;
};

// `schemes` maps dataset name to its label scheme; QA datasets may be
// absent. Records must all be dev or test split. The report is independent
// of `parallelism` for any deterministic backend.
RunResult run_eval(const std::vector<InstructionRecord>& records,
                   const std::map<std::string, LabelScheme>& schemes,
                   Backend& backend, const RunOptions& options = {});

// QA correctness rule: exact match after trimming, or the generation
// contains the gold answer verbatim.
bool qa_containment_match(std::string_view generation, std::string_view gold);

}  // namespace bioinstruct
