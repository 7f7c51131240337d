#pragma once

#include <set>
#include <string>
#include <vector>

#include "bioinstruct/scheme.hpp"

namespace bioinstruct {

// A maximal entity span encoded by BIO labels. end is inclusive.
struct Chunk {
  std::string entity_type;  // empty under the bare B/I scheme
  std::size_t start = 0;
  std::size_t end = 0;

  auto operator<=>(const Chunk&) const = default;
};

enum class ChunkMode {
  // An I-tag with no live chunk of its type starts a new chunk
  // (conventional CoNLL-eval behavior); the default.
  Lenient,
  // Chunks must start with a B-tag; orphan I-tags count as O.
  Strict,
};

inline std::string_view to_string(ChunkMode mode) {
  return mode == ChunkMode::Strict ? "strict" : "lenient";
}

std::set<Chunk> extract_chunks(const std::vector<std::string>& labels,
                               ChunkMode mode);

// Micro-averaged precision/recall/F1 with the 0/0 -> 0 convention.
struct PrfResult {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  double precision() const { return ratio(tp, tp + fp); }
  double recall() const { return ratio(tp, tp + fn); }
  double f1() const {
    const double p = precision();
    const double r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  }

  bool operator==(const PrfResult&) const = default;

 private:
  static double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  }
};

// Entity-level micro PRF over exact-match chunks (type, start, end).
PrfResult entity_prf(const std::vector<std::vector<std::string>>& gold,
                     const std::vector<std::vector<std::string>>& pred,
                     ChunkMode mode);

// Fraction of positions where pred equals gold; the kNoMatch sentinel never
// matches anything.
double label_accuracy(const std::vector<std::string>& gold,
                      const std::vector<std::string>& pred);

// Micro F1 over flat class labels; kNoMatch predictions contribute a false
// negative for the gold class only.
PrfResult micro_f1_labels(const std::vector<std::string>& gold,
                          const std::vector<std::string>& pred,
                          const LabelScheme& scheme);

// Micro PRF over set membership.
PrfResult multilabel_prf(const std::vector<std::set<std::string>>& gold,
                         const std::vector<std::set<std::string>>& pred);

}  // namespace bioinstruct
