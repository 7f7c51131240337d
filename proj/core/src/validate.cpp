#include "bioinstruct/validate.hpp"

namespace bioinstruct {

namespace {

bool has_whitespace(const std::string& s) {
  return s.find_first_of(" \t\r\n\f\v") != std::string::npos;
}

void check_scheme(const LabelScheme* scheme, TaskKind kind,
                  std::vector<std::string>& out) {
  if (scheme == nullptr) {
    out.push_back("no label scheme supplied for " +
                  std::string(to_string(kind)) + " example");
  }
}

struct Visitor {
  const LabelScheme* scheme;
  std::vector<std::string>& out;

  void operator()(const NerExample& e) const {
    check_scheme(scheme, TaskKind::Ner, out);
    if (e.tokens.empty()) out.push_back("empty token sequence");
    if (e.tokens.size() != e.labels.size()) {
      out.push_back("length mismatch: " + std::to_string(e.tokens.size()) +
                    " tokens vs " + std::to_string(e.labels.size()) +
                    " labels");
    }
    for (const auto& t : e.tokens) {
      if (t.empty()) {
        out.push_back("empty token");
      } else if (has_whitespace(t)) {
        out.push_back("token contains whitespace: '" + t + "'");
      }
    }
    if (scheme != nullptr) {
      if (!scheme->bio) out.push_back("NER scheme is not BIO");
      for (const auto& l : e.labels) {
        if (!scheme->has_label(l)) {
          out.push_back("label not in scheme: '" + l + "'");
        }
      }
    }
  }

  void operator()(const ReExample& e) const {
    check_scheme(scheme, TaskKind::Re, out);
    if (e.text.empty()) out.push_back("empty text");
    if (!contains_concept_tag(e.text)) {
      out.push_back("text contains no concept tag (@name$)");
    }
    if (scheme != nullptr && !scheme->has_label(e.label)) {
      out.push_back("label not in scheme: '" + e.label + "'");
    }
  }

  void operator()(const NliExample& e) const {
    if (e.premise.empty()) out.push_back("empty premise");
    if (e.hypothesis.empty()) out.push_back("empty hypothesis");
    if (e.label != kEntailment && e.label != kContradiction &&
        e.label != kNeutral) {
      out.push_back("label not in scheme: '" + e.label + "'");
    }
  }

  void operator()(const DocExample& e) const {
    check_scheme(scheme, TaskKind::DocCls, out);
    if (e.text.empty()) out.push_back("empty text");
    if (e.labels.empty()) out.push_back("empty label set");
    if (scheme != nullptr) {
      for (const auto& l : e.labels) {
        if (!scheme->has_label(l)) {
          out.push_back("label not in scheme: '" + l + "'");
        }
      }
    }
  }

  void operator()(const QaExample& e) const {
    if (e.question.empty()) out.push_back("empty question");
    if (e.answer.empty()) out.push_back("empty answer");
  }
};

}  // namespace

ValidationResult validate_example(const CanonicalExample& example,
                                  const LabelScheme* scheme) {
  ValidationResult r;
  std::visit(Visitor{scheme, r.violations}, example);
  if (id_of(example).empty()) r.violations.push_back("empty id");
  if (dataset_of(example).empty()) {
    r.violations.push_back("empty source_dataset");
  }
  return r;
}

ValidationResult validate_record(const InstructionRecord& record) {
  ValidationResult r;
  if (record.instruction.empty()) r.violations.push_back("empty instruction");
  if (record.output.empty()) r.violations.push_back("empty output");
  if (record.input.empty() && record.meta.task_kind != TaskKind::Qa) {
    r.violations.push_back("empty input on non-QA record");
  }
  if (record.meta.source_id.empty()) r.violations.push_back("empty source_id");
  return r;
}

bool contains_concept_tag(const std::string& text) {
  // Scan for @[a-z_]+$ without a regex; called on every RE example.
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '@') continue;
    std::size_t j = i + 1;
    while (j < text.size() &&
           ((text[j] >= 'a' && text[j] <= 'z') || text[j] == '_')) {
      ++j;
    }
    if (j > i + 1 && j < text.size() && text[j] == '$') return true;
  }
  return false;
}

}  // namespace bioinstruct
