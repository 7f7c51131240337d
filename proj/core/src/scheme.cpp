#include "bioinstruct/scheme.hpp"

#include <algorithm>
#include <unordered_set>

#include "bioinstruct/error.hpp"

namespace bioinstruct {

std::vector<std::string> expand_bio_scheme(
    const std::vector<std::string>& categories) {
  std::unordered_set<std::string> seen;
  for (const auto& c : categories) {
    if (c.empty()) throw ValidationError("empty category name");
    if (c.find_first_of(" \t\r\n") != std::string::npos) {
      throw ValidationError("category name contains whitespace: '" + c + "'");
    }
    if (!seen.insert(c).second) {
      throw ValidationError("duplicate category name: '" + c + "'");
    }
  }
  std::vector<std::string> labels;
  labels.reserve(1 + 2 * categories.size());
  labels.emplace_back("O");
  if (categories.empty()) {
    labels.emplace_back("B");
    labels.emplace_back("I");
  } else {
    for (const auto& c : categories) {
      labels.push_back("B-" + c);
      labels.push_back("I-" + c);
    }
  }
  return labels;
}

LabelScheme LabelScheme::make_bio(std::string name,
                                  std::vector<std::string> categories) {
  LabelScheme s;
  s.name = std::move(name);
  s.task_kind = TaskKind::Ner;
  s.labels = expand_bio_scheme(categories);
  s.categories = std::move(categories);
  s.bio = true;
  return s;
}

LabelScheme LabelScheme::make_flat(std::string name, TaskKind task_kind,
                                   std::vector<std::string> labels) {
  if (labels.empty()) throw ValidationError("label scheme must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw ValidationError("empty label in scheme");
    if (l == kNoMatch) {
      throw ValidationError("label collides with the NO_MATCH sentinel");
    }
    if (!seen.insert(l).second) {
      throw ValidationError("duplicate label in scheme: '" + l + "'");
    }
  }
  LabelScheme s;
  s.name = std::move(name);
  s.task_kind = task_kind;
  s.labels = std::move(labels);
  s.bio = false;
  return s;
}

bool LabelScheme::has_label(const std::string& label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

int LabelScheme::label_index(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1
                            : static_cast<int>(it - labels.begin());
}

std::string LabelScheme::inventory() const {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) out += ", ";
    out += labels[i];
  }
  return out;
}

}  // namespace bioinstruct
