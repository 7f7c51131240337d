#include "bioinstruct/ingest.hpp"

#include <algorithm>
#include <cctype>

#include "bioinstruct/error.hpp"
#include "bioinstruct/jsonl.hpp"
#include "bioinstruct/validate.hpp"

namespace bioinstruct {

namespace {

std::string sequential_id(const std::string& dataset, Split split,
                          std::size_t n) {
  return dataset + "-" + std::string(to_string(split)) + "-" +
         std::to_string(n);
}

void warn(ParseDiagnostics* diag, std::string msg) {
  if (diag != nullptr) diag->warnings.push_back(std::move(msg));
}

std::string fold_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

}  // namespace

std::vector<NerExample> parse_conll(std::string_view text,
                                    const LabelScheme& scheme,
                                    const std::string& dataset, Split split,
                                    ParseDiagnostics* diag) {
  if (!scheme.bio) {
    throw ValidationError("CoNLL ingestion requires a BIO scheme");
  }
  std::vector<NerExample> out;
  std::vector<std::string> tokens;
  std::vector<std::string> labels;

  const auto flush = [&] {
    if (tokens.empty()) return;
    NerExample e;
    e.id = sequential_id(dataset, split, out.size());
    e.source_dataset = dataset;
    e.split = split;
    e.tokens = std::move(tokens);
    e.labels = std::move(labels);
    tokens.clear();
    labels.clear();
    out.push_back(std::move(e));
  };

  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) {
      flush();
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(i + 1, "expected token<TAB>label, got '" + line + "'");
    }
    if (line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(i + 1, "more than one TAB in line");
    }
    std::string token = line.substr(0, tab);
    std::string label = line.substr(tab + 1);
    if (token.empty()) throw ParseError(i + 1, "empty token");
    if (token.find_first_of(" \t\r\n\f\v") != std::string::npos) {
      throw ParseError(i + 1, "token contains whitespace: '" + token + "'");
    }
    if (!scheme.has_label(label)) {
      throw ParseError(i + 1, "label not in scheme: '" + label + "'");
    }
    tokens.push_back(std::move(token));
    labels.push_back(std::move(label));
  }
  flush();
  if (out.empty()) warn(diag, "no sentences in " + dataset + " input");
  return out;
}

std::string serialize_conll(const std::vector<NerExample>& examples) {
  std::string out;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (i > 0) out += '\n';
    const auto& e = examples[i];
    for (std::size_t t = 0; t < e.tokens.size(); ++t) {
      out += e.tokens[t];
      out += '\t';
      out += e.labels[t];
      out += '\n';
    }
  }
  return out;
}

std::string insert_concept_tags(std::string_view text,
                                std::vector<ConceptSpan> spans) {
  std::sort(spans.begin(), spans.end(),
            [](const ConceptSpan& a, const ConceptSpan& b) {
              return a.start < b.start;
            });
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const ConceptSpan& s = spans[i];
    if (s.start >= s.end || s.end > text.size()) {
      throw ValidationError("span [" + std::to_string(s.start) + ", " +
                            std::to_string(s.end) + ") out of bounds for " +
                            std::to_string(text.size()) + "-byte text");
    }
    if (s.concept_name.empty() ||
        s.concept_name.find_first_not_of("abcdefghijklmnopqrstuvwxyz_") !=
            std::string::npos) {
      throw ValidationError("concept name must be lowercase: '" + s.concept_name +
                            "'");
    }
    if (i > 0 && spans[i - 1].end > s.start) {
      throw ValidationError("overlapping concept spans at offset " +
                            std::to_string(s.start));
    }
  }
  // Right-to-left replacement keeps earlier offsets valid.
  std::string result(text);
  for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
    result.replace(it->start, it->end - it->start, "@" + it->concept_name + "$");
  }
  return result;
}

std::vector<ReExample> parse_re_file(std::string_view text,
                                     const LabelScheme& scheme,
                                     const std::string& dataset, Split split,
                                     ParseDiagnostics* diag) {
  std::vector<ReExample> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 =
        t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos ||
        line.find('\t', t2 + 1) != std::string::npos) {
      throw ParseError(i + 1, "expected id<TAB>sentence<TAB>label");
    }
    ReExample e;
    e.id = line.substr(0, t1);
    e.source_dataset = dataset;
    e.split = split;
    e.text = line.substr(t1 + 1, t2 - t1 - 1);
    e.label = line.substr(t2 + 1);
    if (e.id.empty()) throw ParseError(i + 1, "empty id");
    if (!contains_concept_tag(e.text)) {
      throw ParseError(i + 1, "sentence contains no concept tag (@name$)");
    }
    if (!scheme.has_label(e.label)) {
      throw ParseError(i + 1, "label not in scheme: '" + e.label + "'");
    }
    out.push_back(std::move(e));
  }
  if (out.empty()) warn(diag, "no relations in " + dataset + " input");
  return out;
}

std::vector<NliExample> parse_nli(std::string_view text,
                                  const std::string& dataset, Split split,
                                  const NliFieldNames& fields,
                                  ParseDiagnostics* diag) {
  std::vector<NliExample> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    json j = json::parse(lines[i], nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError(i + 1, "malformed JSON object");
    }
    NliExample e;
    e.id = sequential_id(dataset, split, out.size());
    e.source_dataset = dataset;
    e.split = split;
    try {
      e.premise = j.at(fields.premise).get<std::string>();
      e.hypothesis = j.at(fields.hypothesis).get<std::string>();
      const std::string raw = j.at(fields.label).get<std::string>();
      const std::string folded = fold_ascii(raw);
      if (folded == "entailment") {
        e.label = kEntailment;
      } else if (folded == "contradiction") {
        e.label = kContradiction;
      } else if (folded == "neutral") {
        e.label = kNeutral;
      } else {
        throw ParseError(i + 1, "unknown gold label '" + raw + "'");
      }
    } catch (const json::exception& ex) {
      throw ParseError(i + 1, ex.what());
    }
    if (e.premise.empty()) throw ParseError(i + 1, "empty premise");
    if (e.hypothesis.empty()) throw ParseError(i + 1, "empty hypothesis");
    out.push_back(std::move(e));
  }
  if (out.empty()) warn(diag, "no pairs in " + dataset + " input");
  return out;
}

std::vector<DocExample> parse_doc(std::string_view text,
                                  const LabelScheme& scheme,
                                  const std::string& dataset, Split split,
                                  ParseDiagnostics* diag) {
  std::vector<DocExample> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    json j = json::parse(lines[i], nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError(i + 1, "malformed JSON object");
    }
    DocExample e;
    e.id = sequential_id(dataset, split, out.size());
    e.source_dataset = dataset;
    e.split = split;
    try {
      e.text = j.at("text").get<std::string>();
      e.labels = j.at("labels").get<std::set<std::string>>();
    } catch (const json::exception& ex) {
      throw ParseError(i + 1, ex.what());
    }
    if (e.text.empty()) throw ParseError(i + 1, "empty text");
    if (e.labels.empty()) throw ParseError(i + 1, "empty label list");
    for (const auto& l : e.labels) {
      if (!scheme.has_label(l)) {
        throw ParseError(i + 1, "label not in scheme: '" + l + "'");
      }
    }
    out.push_back(std::move(e));
  }
  if (out.empty()) warn(diag, "no documents in " + dataset + " input");
  return out;
}

std::vector<QaExample> parse_qa(std::string_view text,
                                const std::string& dataset, Split split,
                                ParseDiagnostics* diag) {
  std::vector<QaExample> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    json j = json::parse(lines[i], nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError(i + 1, "malformed JSON object");
    }
    QaExample e;
    e.id = sequential_id(dataset, split, out.size());
    e.source_dataset = dataset;
    e.split = split;
    try {
      const std::string instruction = j.value("instruction", "");
      const std::string input = j.value("input", "");
      if (!j.contains("output")) {
        throw ParseError(i + 1, "missing 'output' field");
      }
      e.answer = j.at("output").get<std::string>();
      if (!input.empty()) {
        e.question = input;
        if (!instruction.empty()) e.context = instruction;
      } else {
        e.question = instruction;
      }
    } catch (const json::exception& ex) {
      throw ParseError(i + 1, ex.what());
    }
    if (e.question.empty()) throw ParseError(i + 1, "empty question");
    if (e.answer.empty()) throw ParseError(i + 1, "empty answer");
    out.push_back(std::move(e));
  }
  if (out.empty()) warn(diag, "no QA pairs in " + dataset + " input");
  return out;
}

std::vector<CanonicalExample> ingest_split(const DatasetManifest& manifest,
                                           Split split,
                                           ParseDiagnostics* diag) {
  const std::string contents = read_file(manifest.resolve_path(split));
  std::vector<CanonicalExample> out;
  const auto lift = [&out](const auto& examples) {
    out.assign(examples.begin(), examples.end());
  };
  if (manifest.format == "conll") {
    lift(parse_conll(contents, *manifest.scheme, manifest.name, split, diag));
  } else if (manifest.format == "re_tsv") {
    lift(parse_re_file(contents, *manifest.scheme, manifest.name, split,
                       diag));
  } else if (manifest.format == "nli_jsonl") {
    lift(parse_nli(contents, manifest.name, split, manifest.nli_fields, diag));
  } else if (manifest.format == "doc_jsonl") {
    lift(parse_doc(contents, *manifest.scheme, manifest.name, split, diag));
  } else if (manifest.format == "qa_jsonl") {
    lift(parse_qa(contents, manifest.name, split, diag));
  } else {
    throw DataError("unknown source format '" + manifest.format + "'");
  }
  return out;
}

}  // namespace bioinstruct
