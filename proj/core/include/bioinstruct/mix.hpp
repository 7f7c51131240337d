#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bioinstruct/examples.hpp"
#include "bioinstruct/rng.hpp"

namespace bioinstruct {

// Declarative recipe for a training corpus: per-source quotas, a seed for
// sampling and the final shuffle, and a name.
struct MixEntry {
  std::string source;
  std::optional<std::uint64_t> quota;  // nullopt = ALL

  bool operator==(const MixEntry&) const = default;
};

struct MixSpec {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<MixEntry> entries;

  static MixSpec load(const std::string& path);
  static MixSpec parse(const std::string& text);
  std::string serialize() const;

  // Divides every numeric quota by `denominator` (floor); ALL is unchanged.
  MixSpec scaled(std::uint64_t denominator) const;
};

struct MixStats {
  std::map<std::string, std::uint64_t> per_source;
  std::map<std::string, std::uint64_t> per_task;
  std::uint64_t total = 0;
  std::string digest;  // SHA-256 hex of the canonical JSONL serialization

  std::string serialize() const;
};

// Uniform sample of exactly `quota` records without replacement; identity
// when quota is ALL. Throws DataError naming `source` when the quota exceeds
// the source size.
std::vector<InstructionRecord> sample_source(
    std::vector<InstructionRecord> records, std::optional<std::uint64_t> quota,
    SeededRng& rng, const std::string& source);

// Samples every entry, concatenates, and applies a seeded Fisher-Yates
// permutation. Output is a uniform permutation of the union of samples.
std::vector<InstructionRecord> build_mix(
    const MixSpec& spec,
    const std::map<std::string, std::vector<InstructionRecord>>& sources);

// Canonical JSONL writer; returns stats including the content digest.
// read_records_jsonl is its exact inverse.
MixStats write_records_jsonl(const std::vector<InstructionRecord>& records,
                             const std::string& path);
std::vector<InstructionRecord> read_records_jsonl(const std::string& path);

MixStats compute_stats(const std::vector<InstructionRecord>& records);

// Training-recipe manifest: the fixed fine-tuning hyperparameters plus the
// mix digest for provenance. Returned as a JSON string.
std::string emit_training_recipe(const MixStats& stats,
                                 const std::string& mix_name);

}  // namespace bioinstruct
