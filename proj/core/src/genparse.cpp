#include "bioinstruct/genparse.hpp"

#include <algorithm>
#include <cctype>

#include "bioinstruct/jsonl.hpp"

namespace bioinstruct {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

std::string fold_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

// Whole-word occurrence of `needle` in `haystack` (both already folded).
bool contains_whole_word(const std::string& haystack,
                         const std::string& needle) {
  if (needle.empty()) return false;
  std::size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    const bool left_ok =
        pos == 0 || !is_word_char(static_cast<unsigned char>(haystack[pos - 1]));
    const std::size_t after = pos + needle.size();
    const bool right_ok =
        after >= haystack.size() ||
        !is_word_char(static_cast<unsigned char>(haystack[after]));
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

}  // namespace

std::string normalize_label_text(std::string_view s) {
  std::string_view t = trim(s);
  while (!t.empty() && std::ispunct(static_cast<unsigned char>(t.front()))) {
    t.remove_prefix(1);
  }
  while (!t.empty() && std::ispunct(static_cast<unsigned char>(t.back()))) {
    t.remove_suffix(1);
  }
  return fold_ascii(trim(t));
}

ParsedPrediction parse_ner_generation(std::string_view generation,
                                      const std::vector<std::string>& tokens,
                                      const LabelScheme& scheme) {
  ParsedPrediction p;
  p.task_kind = TaskKind::Ner;
  p.labels.assign(tokens.size(), "O");

  std::vector<std::pair<std::string, std::string>> parsed;  // (token, label)
  std::size_t line_count = 0;
  for (const auto& raw : split_lines(generation)) {
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    ++line_count;
    const std::size_t sep = line.rfind(": ");
    if (sep == std::string_view::npos) {
      p.malformed = true;
      p.notes.push_back("unparseable line: '" + std::string(line) + "'");
      continue;
    }
    parsed.emplace_back(std::string(line.substr(0, sep)),
                        std::string(line.substr(sep + 2)));
  }

  // Forward scan: each parsed line may only match at or after the position
  // where the previous one matched.
  std::size_t next = 0;
  for (const auto& [token, label] : parsed) {
    const auto it = std::find(tokens.begin() + static_cast<std::ptrdiff_t>(next),
                              tokens.end(), token);
    if (it == tokens.end()) {
      p.malformed = true;
      p.notes.push_back("unaligned token: '" + token + "'");
      continue;
    }
    const std::size_t at = static_cast<std::size_t>(it - tokens.begin());
    if (scheme.has_label(label)) {
      p.labels[at] = label;
    } else {
      p.malformed = true;
      p.notes.push_back("invalid label '" + label + "' for token '" + token +
                        "'");
    }
    next = at + 1;
  }

  if (line_count != tokens.size()) {
    p.malformed = true;
    p.notes.push_back("expected " + std::to_string(tokens.size()) +
                      " lines, got " + std::to_string(line_count));
  }
  return p;
}

ParsedPrediction parse_classification_generation(std::string_view generation,
                                                 const LabelScheme& scheme) {
  ParsedPrediction p;
  p.task_kind = scheme.task_kind;

  const std::string normalized = normalize_label_text(generation);
  for (const auto& label : scheme.labels) {
    if (normalized == normalize_label_text(label)) {
      p.label = label;
      return p;
    }
  }

  // Format deviation: look for scheme labels as whole-word substrings.
  p.malformed = true;
  const std::string folded = fold_ascii(generation);
  const std::string* hit = nullptr;
  std::size_t distinct = 0;
  for (const auto& label : scheme.labels) {
    if (contains_whole_word(folded, fold_ascii(label))) {
      ++distinct;
      hit = &label;
    }
  }
  if (distinct == 1) {
    p.label = *hit;
    p.notes.push_back("label recovered by substring scan");
  } else {
    p.label = kNoMatch;
    p.notes.push_back(distinct == 0 ? "no scheme label found"
                                    : "ambiguous: multiple scheme labels found");
  }
  return p;
}

ParsedPrediction parse_multilabel_generation(std::string_view generation,
                                             const LabelScheme& scheme) {
  ParsedPrediction p;
  p.task_kind = scheme.task_kind;

  std::vector<std::string> fragments;
  std::string current;
  const auto flush = [&] {
    const std::string_view t = trim(current);
    if (!t.empty()) fragments.emplace_back(t);
    current.clear();
  };
  for (const char c : generation) {
    if (c == ',' || c == '\n' || c == '\r') {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();

  if (fragments.empty()) {
    p.malformed = true;
    p.notes.push_back("no label fragments found");
    return p;
  }

  std::vector<bool> present(scheme.labels.size(), false);
  for (const auto& fragment : fragments) {
    const std::string normalized = normalize_label_text(fragment);
    bool matched = false;
    for (std::size_t i = 0; i < scheme.labels.size(); ++i) {
      if (normalized == normalize_label_text(scheme.labels[i])) {
        present[i] = true;
        matched = true;
        break;
      }
    }
    if (!matched) {
      p.malformed = true;
      p.notes.push_back("unmatched fragment: '" + fragment + "'");
    }
  }
  for (std::size_t i = 0; i < scheme.labels.size(); ++i) {
    if (present[i]) p.label_set.push_back(scheme.labels[i]);
  }
  return p;
}

}  // namespace bioinstruct
