#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bioinstruct/examples.hpp"
#include "bioinstruct/manifest.hpp"
#include "bioinstruct/scheme.hpp"

namespace bioinstruct {

// Parsers for the supported source corpus formats. All are total over byte
// inputs: they return examples or throw ParseError with a line number.

struct ParseDiagnostics {
  std::vector<std::string> warnings;
};

// CoNLL token/label format: "token<TAB>label" lines, blank line between
// sentences, no comments. Examples get sequential ids
// "<dataset>-<split>-<n>".
std::vector<NerExample> parse_conll(std::string_view text,
                                    const LabelScheme& scheme,
                                    const std::string& dataset, Split split,
                                    ParseDiagnostics* diag = nullptr);

// Inverse writer, used for fixtures and round-trip checks.
std::string serialize_conll(const std::vector<NerExample>& examples);

// A span of source text to be replaced by a concept tag.
struct ConceptSpan {
  std::size_t start = 0;  // byte offset
  std::size_t end = 0;    // exclusive
  std::string concept_name;  // lowercase name, e.g. problem, test, treatment

  bool operator==(const ConceptSpan&) const = default;
};

// Replaces each span's surface text with "@<concept>$". Replacements are
// applied right to left so earlier offsets stay valid. Throws on overlapping
// or out-of-bounds spans.
std::string insert_concept_tags(std::string_view text,
                                std::vector<ConceptSpan> spans);

// RE TSV: "id<TAB>tagged_sentence<TAB>label" per line. Every sentence must
// contain at least one concept tag.
std::vector<ReExample> parse_re_file(std::string_view text,
                                     const LabelScheme& scheme,
                                     const std::string& dataset, Split split,
                                     ParseDiagnostics* diag = nullptr);

// NLI JSONL with premise/hypothesis/label fields (names per manifest);
// labels are case-folded onto Entailment / Contradiction / Neutral.
std::vector<NliExample> parse_nli(std::string_view text,
                                  const std::string& dataset, Split split,
                                  const NliFieldNames& fields = {},
                                  ParseDiagnostics* diag = nullptr);

// Document classification JSONL: {"text": ..., "labels": [...]}.
std::vector<DocExample> parse_doc(std::string_view text,
                                  const LabelScheme& scheme,
                                  const std::string& dataset, Split split,
                                  ParseDiagnostics* diag = nullptr);

// QA JSONL in instruction/input/output form. The question is the input when
// non-empty (the original instruction then becomes context), otherwise the
// instruction itself.
std::vector<QaExample> parse_qa(std::string_view text,
                                const std::string& dataset, Split split,
                                ParseDiagnostics* diag = nullptr);

// Dispatches on manifest.format and parses the given split's file.
std::vector<CanonicalExample> ingest_split(const DatasetManifest& manifest,
                                           Split split,
                                           ParseDiagnostics* diag = nullptr);

}  // namespace bioinstruct
