#include "bioinstruct/metrics.hpp"

#include <algorithm>

#include "bioinstruct/error.hpp"

namespace bioinstruct {

namespace {

enum class Tag { O, B, I };

struct BioLabel {
  Tag tag = Tag::O;
  std::string type;  // empty for bare B/I
};

// "B-PROBLEM" -> (B, PROBLEM); "I" -> (I, ""); anything else -> O.
BioLabel decode(const std::string& label) {
  if (label == "O") return {Tag::O, ""};
  if (label == "B") return {Tag::B, ""};
  if (label == "I") return {Tag::I, ""};
  if (label.size() > 2 && label[1] == '-') {
    if (label[0] == 'B') return {Tag::B, label.substr(2)};
    if (label[0] == 'I') return {Tag::I, label.substr(2)};
  }
  return {Tag::O, ""};
}

}  // namespace

std::set<Chunk> extract_chunks(const std::vector<std::string>& labels,
                               ChunkMode mode) {
  std::set<Chunk> chunks;
  bool open = false;
  Chunk current;
  const auto close = [&](std::size_t end) {
    if (open) {
      current.end = end;
      chunks.insert(current);
      open = false;
    }
  };
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const BioLabel l = decode(labels[i]);
    switch (l.tag) {
      case Tag::O:
        close(i - 1);
        break;
      case Tag::B:
        close(i - 1);
        current = Chunk{l.type, i, i};
        open = true;
        break;
      case Tag::I:
        if (open && current.entity_type == l.type) break;  // extend
        close(i - 1);
        if (mode == ChunkMode::Lenient) {
          current = Chunk{l.type, i, i};
          open = true;
        }
        break;
    }
  }
  close(labels.empty() ? 0 : labels.size() - 1);
  return chunks;
}

PrfResult entity_prf(const std::vector<std::vector<std::string>>& gold,
                     const std::vector<std::vector<std::string>>& pred,
                     ChunkMode mode) {
  if (gold.size() != pred.size()) {
    throw ValidationError("sequence count mismatch: " +
                          std::to_string(gold.size()) + " gold vs " +
                          std::to_string(pred.size()) + " pred");
  }
  PrfResult r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != pred[i].size()) {
      throw ValidationError("length mismatch at sequence " + std::to_string(i) +
                            ": " + std::to_string(gold[i].size()) + " vs " +
                            std::to_string(pred[i].size()));
    }
    const std::set<Chunk> g = extract_chunks(gold[i], mode);
    const std::set<Chunk> p = extract_chunks(pred[i], mode);
    for (const auto& c : p) {
      if (g.count(c) != 0) {
        ++r.tp;
      } else {
        ++r.fp;
      }
    }
    for (const auto& c : g) {
      if (p.count(c) == 0) ++r.fn;
    }
  }
  return r;
}

double label_accuracy(const std::vector<std::string>& gold,
                      const std::vector<std::string>& pred) {
  if (gold.size() != pred.size()) {
    throw ValidationError("length mismatch: " + std::to_string(gold.size()) +
                          " gold vs " + std::to_string(pred.size()) + " pred");
  }
  if (gold.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (pred[i] != kNoMatch && pred[i] == gold[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

PrfResult micro_f1_labels(const std::vector<std::string>& gold,
                          const std::vector<std::string>& pred,
                          const LabelScheme& scheme) {
  if (gold.size() != pred.size()) {
    throw ValidationError("length mismatch: " + std::to_string(gold.size()) +
                          " gold vs " + std::to_string(pred.size()) + " pred");
  }
  PrfResult r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (pred[i] == gold[i]) {
      ++r.tp;
      continue;
    }
    ++r.fn;  // the gold class was missed
    if (pred[i] != kNoMatch && scheme.has_label(pred[i])) {
      ++r.fp;  // a wrong class was asserted
    }
  }
  return r;
}

PrfResult multilabel_prf(const std::vector<std::set<std::string>>& gold,
                         const std::vector<std::set<std::string>>& pred) {
  if (gold.size() != pred.size()) {
    throw ValidationError("length mismatch: " + std::to_string(gold.size()) +
                          " gold vs " + std::to_string(pred.size()) + " pred");
  }
  PrfResult r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (const auto& l : pred[i]) {
      if (gold[i].count(l) != 0) {
        ++r.tp;
      } else {
        ++r.fp;
      }
    }
    for (const auto& l : gold[i]) {
      if (pred[i].count(l) == 0) ++r.fn;
    }
  }
  return r;
}

}  // namespace bioinstruct
