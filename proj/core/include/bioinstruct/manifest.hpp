#pragma once

#include <map>
#include <optional>
#include <string>

#include "bioinstruct/scheme.hpp"
#include "bioinstruct/task.hpp"

namespace bioinstruct {

// On-disk field names for JSONL-backed corpora (NLI); overridable per
// manifest because source corpora differ.
struct NliFieldNames {
  std::string premise = "sentence1";
  std::string hypothesis = "sentence2";
  std::string label = "gold_label";
};

// Describes one source corpus: where its files live, how to parse them and
// which label inventory applies. Sources themselves are user-supplied; the
// repo ships only manifests and synthetic fixtures.
struct DatasetManifest {
  std::string name;
  TaskKind task_kind = TaskKind::Ner;
  std::string format;  // conll | re_tsv | nli_jsonl | doc_jsonl | qa_jsonl
  std::optional<LabelScheme> scheme;  // absent for QA sources
  std::map<Split, std::string> split_paths;  // relative to the manifest file
  NliFieldNames nli_fields;

  const LabelScheme* scheme_ptr() const {
    return scheme ? &*scheme : nullptr;
  }

  // Path of the file for `split`, resolved against the manifest location.
  std::string resolve_path(Split split) const;

  static DatasetManifest load(const std::string& path);
  static DatasetManifest parse(const std::string& text,
                               const std::string& base_dir);
  std::string serialize() const;

 private:
  std::string base_dir_;
};

}  // namespace bioinstruct
