#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "bioinstruct/task.hpp"

namespace bioinstruct {

// Canonical task examples: the format-neutral interchange between corpus
// ingestion and prompt templating. All are plain immutable values.

struct NerExample {
  std::string id;
  std::string source_dataset;
  Split split = Split::Train;
  std::vector<std::string> tokens;
  std::vector<std::string> labels;

  bool operator==(const NerExample&) const = default;
};

struct ReExample {
  std::string id;
  std::string source_dataset;
  Split split = Split::Train;
  std::string text;  // contains >= 1 concept tag of the form @name$
  std::string label;

  bool operator==(const ReExample&) const = default;
};

inline constexpr const char* kEntailment = "Entailment";
inline constexpr const char* kContradiction = "Contradiction";
inline constexpr const char* kNeutral = "Neutral";

struct NliExample {
  std::string id;
  std::string source_dataset;
  Split split = Split::Train;
  std::string premise;
  std::string hypothesis;
  std::string label;  // Entailment | Contradiction | Neutral

  bool operator==(const NliExample&) const = default;
};

struct DocExample {
  std::string id;
  std::string source_dataset;
  Split split = Split::Train;
  std::string text;
  std::set<std::string> labels;  // non-empty

  bool operator==(const DocExample&) const = default;
};

struct QaExample {
  std::string id;
  std::string source_dataset;
  Split split = Split::Train;
  std::string question;
  std::optional<std::string> context;
  std::string answer;

  bool operator==(const QaExample&) const = default;
};

using CanonicalExample =
    std::variant<NerExample, ReExample, NliExample, DocExample, QaExample>;

TaskKind task_kind_of(const CanonicalExample& example);
const std::string& id_of(const CanonicalExample& example);
const std::string& dataset_of(const CanonicalExample& example);
Split split_of(const CanonicalExample& example);

// One Alpaca-style training or evaluation sample plus provenance.
struct RecordMeta {
  TaskKind task_kind = TaskKind::Ner;
  std::string source_dataset;
  std::string source_id;
  std::string template_id;
  Split split = Split::Train;

  bool operator==(const RecordMeta&) const = default;
};

struct InstructionRecord {
  std::string instruction;
  std::string input;  // may be empty only for QA records without context
  std::string output;
  RecordMeta meta;

  bool operator==(const InstructionRecord&) const = default;
};

}  // namespace bioinstruct
