#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bioinstruct/scheme.hpp"
#include "bioinstruct/task.hpp"

namespace bioinstruct {

// Structured prediction recovered from a free-text generation. Every parse
// operation is total: arbitrary input (empty, binary, megabytes) yields a
// ParsedPrediction, never an exception.
struct ParsedPrediction {
  std::string record_id;
  TaskKind task_kind = TaskKind::Ner;
  std::vector<std::string> labels;     // NER: always one label per token
  std::string label;                   // RE/NLI: scheme label or kNoMatch
  std::vector<std::string> label_set;  // DOC_CLS, in scheme order
  bool malformed = false;
  std::vector<std::string> notes;
};

// Parses "token: LABEL" lines and aligns them to the input tokens with a
// forward scan on exact token text. Unaligned or invalid positions get "O";
// the result always has exactly tokens.size() labels. malformed is set when
// any line is skipped, any label is invalid, or the line count differs from
// the token count.
ParsedPrediction parse_ner_generation(std::string_view generation,
                                      const std::vector<std::string>& tokens,
                                      const LabelScheme& scheme);

// Single-label classification. An exact normalized match (trim, case fold,
// strip surrounding punctuation) is clean; otherwise a unique whole-word
// scheme-label hit inside the text wins with malformed set; zero or several
// hits yield kNoMatch.
ParsedPrediction parse_classification_generation(std::string_view generation,
                                                 const LabelScheme& scheme);

// Multi-label: fragments split on commas and newlines, each matched exactly
// after normalization. malformed when any fragment is unmatched or nothing
// parseable remains.
ParsedPrediction parse_multilabel_generation(std::string_view generation,
                                             const LabelScheme& scheme);

// trim + ASCII case fold + strip surrounding punctuation; exposed for tests.
std::string normalize_label_text(std::string_view s);

}  // namespace bioinstruct
