#pragma once

#include <string>
#include <vector>

#include "bioinstruct/task.hpp"

namespace bioinstruct {

// Sentinel returned by classification parsers when no label can be recovered.
// Never a member of any scheme; scored as a wrong prediction, never dropped.
inline constexpr const char* kNoMatch = "__NO_MATCH__";

// Expands entity categories into BIO token labels.
//
// With no categories the scheme is the bare [O, B, I]; otherwise O followed
// by B-<category>, I-<category> per category in input order, so the result
// always has 1 + 2*|categories| labels.
std::vector<std::string> expand_bio_scheme(
    const std::vector<std::string>& categories);

// A task's label inventory. Immutable after construction.
struct LabelScheme {
  std::string name;
  TaskKind task_kind = TaskKind::Ner;
  std::vector<std::string> categories;  // empty for bare BIO and flat schemes
  std::vector<std::string> labels;
  bool bio = false;

  // BIO scheme for token labeling; labels derived via expand_bio_scheme.
  static LabelScheme make_bio(std::string name,
                              std::vector<std::string> categories);

  // Flat class inventory for classification-style tasks.
  static LabelScheme make_flat(std::string name, TaskKind task_kind,
                               std::vector<std::string> labels);

  bool has_label(const std::string& label) const;
  int label_index(const std::string& label) const;  // -1 when absent

  // Human-readable inventory used to expand the {labels} placeholder in
  // instruction templates: the labels joined by ", ".
  std::string inventory() const;
};

}  // namespace bioinstruct
