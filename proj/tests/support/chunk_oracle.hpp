// Independent chunk-extraction oracle. The library walks a state machine;
// this enumerates every (start, end, type) candidate and tests it directly
// against the bracket conditions, so the two can only agree by computing the
// same thing.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "bioinstruct/metrics.hpp"
#include "bioinstruct/rng.hpp"

namespace oracle {

struct Tag {
  char kind = 'O';   // 'B', 'I', 'O'
  std::string type;  // empty for the bare scheme
};

inline Tag decode(const std::string& label) {
  if (label == "B") return {'B', ""};
  if (label == "I") return {'I', ""};
  if (label.size() > 2 && label[1] == '-' &&
      (label[0] == 'B' || label[0] == 'I')) {
    return {label[0], label.substr(2)};
  }
  return {'O', ""};
}

inline bool is_tag(const std::string& label, char kind,
                   const std::string& type) {
  const Tag t = decode(label);
  return t.kind == kind && t.type == type;
}

// A chunk of `type` spans [s, e] iff:
//   - labels[s] is B-type, or (lenient only) an I-type whose predecessor is
//     neither B-type nor I-type;
//   - every position in (s, e] is I-type;
//   - the chunk is maximal: position e+1, if any, is not I-type.
inline std::set<bioinstruct::Chunk> enumerate_chunks(
    const std::vector<std::string>& labels, bioinstruct::ChunkMode mode) {
  std::set<bioinstruct::Chunk> out;
  const std::size_t n = labels.size();
  std::set<std::string> types;
  for (const auto& l : labels) {
    const Tag t = decode(l);
    if (t.kind != 'O') types.insert(t.type);
  }
  for (const std::string& type : types) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t e = s; e < n; ++e) {
        bool starts = is_tag(labels[s], 'B', type);
        if (!starts && mode == bioinstruct::ChunkMode::Lenient &&
            is_tag(labels[s], 'I', type)) {
          starts = s == 0 || (!is_tag(labels[s - 1], 'B', type) &&
                              !is_tag(labels[s - 1], 'I', type));
        }
        if (!starts) continue;
        bool inner_ok = true;
        for (std::size_t i = s + 1; i <= e; ++i) {
          if (!is_tag(labels[i], 'I', type)) {
            inner_ok = false;
            break;
          }
        }
        if (!inner_ok) continue;
        if (e + 1 < n && is_tag(labels[e + 1], 'I', type)) continue;
        out.insert(bioinstruct::Chunk{type, s, e});
      }
    }
  }
  return out;
}

// Micro PRF via the enumeration route.
inline bioinstruct::PrfResult prf(
    const std::vector<std::vector<std::string>>& gold,
    const std::vector<std::vector<std::string>>& pred,
    bioinstruct::ChunkMode mode) {
  bioinstruct::PrfResult r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = enumerate_chunks(gold[i], mode);
    const auto p = enumerate_chunks(pred[i], mode);
    for (const auto& c : p) {
      if (g.count(c)) {
        ++r.tp;
      } else {
        ++r.fp;
      }
    }
    for (const auto& c : g) {
      if (!p.count(c)) ++r.fn;
    }
  }
  return r;
}

// Random label sequence over a BIO inventory with `n_types` categories
// (0 = bare scheme); all label positions drawn independently, so orphan
// I-tags and type breaks occur often.
inline std::vector<std::string> random_sequence(bioinstruct::SeededRng& rng,
                                                std::size_t max_len,
                                                std::size_t n_types) {
  static const std::vector<std::string> kTypes = {"X", "Y", "Z"};
  const std::size_t len = 1 + rng.next_below(max_len);
  std::vector<std::string> labels;
  labels.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    const auto kind = rng.next_below(3);
    if (kind == 0) {
      labels.emplace_back("O");
      continue;
    }
    const char* prefix = kind == 1 ? "B" : "I";
    if (n_types == 0) {
      labels.emplace_back(prefix);
    } else {
      labels.push_back(std::string(prefix) + "-" +
                       kTypes[rng.next_below(n_types)]);
    }
  }
  return labels;
}

}  // namespace oracle
