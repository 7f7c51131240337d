#include "bioinstruct/mix.hpp"

#include <algorithm>
#include <unordered_set>

#include "bioinstruct/digest.hpp"
#include "bioinstruct/error.hpp"
#include "bioinstruct/jsonl.hpp"

namespace bioinstruct {

MixSpec MixSpec::load(const std::string& path) { return parse(read_file(path)); }

MixSpec MixSpec::parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("mix spec is not a JSON object");
  }
  MixSpec spec;
  std::unordered_set<std::string> seen;
  try {
    spec.name = j.at("name").get<std::string>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& e : j.at("entries")) {
      MixEntry entry;
      entry.source = e.at("source").get<std::string>();
      const json& q = e.at("quota");
      if (q.is_string()) {
        if (q.get<std::string>() != "ALL") {
          throw ParseError("quota must be a positive integer or \"ALL\"");
        }
      } else {
        const auto quota = q.get<std::int64_t>();
        if (quota <= 0) throw ParseError("quota must be positive");
        entry.quota = static_cast<std::uint64_t>(quota);
      }
      if (!seen.insert(entry.source).second) {
        throw ParseError("duplicate source '" + entry.source + "' in spec");
      }
      spec.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad mix spec: ") + e.what());
  }
  return spec;
}

std::string MixSpec::serialize() const {
  json j;
  j["name"] = name;
  j["seed"] = seed;
  json arr = json::array();
  for (const auto& e : entries) {
    json ej;
    ej["source"] = e.source;
    if (e.quota) {
      ej["quota"] = *e.quota;
    } else {
      ej["quota"] = "ALL";
    }
    arr.push_back(std::move(ej));
  }
  j["entries"] = std::move(arr);
  return j.dump(2);
}

MixSpec MixSpec::scaled(std::uint64_t denominator) const {
  if (denominator == 0) throw ValidationError("scale denominator is zero");
  MixSpec out = *this;
  for (auto& e : out.entries) {
    if (e.quota) {
      const std::uint64_t q = *e.quota / denominator;
      if (q == 0) {
        throw ValidationError("quota for '" + e.source +
                              "' vanishes at scale 1/" +
                              std::to_string(denominator));
      }
      e.quota = q;
    }
  }
  return out;
}

std::vector<InstructionRecord> sample_source(
    std::vector<InstructionRecord> records, std::optional<std::uint64_t> quota,
    SeededRng& rng, const std::string& source) {
  if (!quota) return records;
  if (*quota > records.size()) {
    throw DataError("quota " + std::to_string(*quota) + " exceeds size " +
                    std::to_string(records.size()) + " of source '" + source +
                    "'");
  }
  // Partial Fisher-Yates: after k swaps the first k slots are a uniform
  // sample without replacement.
  const std::size_t n = records.size();
  for (std::size_t i = 0; i < *quota; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(records[i], records[j]);
  }
  records.resize(*quota);
  return records;
}

std::vector<InstructionRecord> build_mix(
    const MixSpec& spec,
    const std::map<std::string, std::vector<InstructionRecord>>& sources) {
  SeededRng rng(spec.seed);
  std::vector<InstructionRecord> out;
  for (const auto& entry : spec.entries) {
    const auto it = sources.find(entry.source);
    if (it == sources.end()) {
      throw DataError("mix spec '" + spec.name + "' names missing source '" +
                      entry.source + "'");
    }
    auto sampled = sample_source(it->second, entry.quota, rng, entry.source);
    out.insert(out.end(), std::make_move_iterator(sampled.begin()),
               std::make_move_iterator(sampled.end()));
  }
  // Fisher-Yates over the concatenation.
  for (std::size_t i = out.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

MixStats write_records_jsonl(const std::vector<InstructionRecord>& records,
                             const std::string& path) {
  std::string buf;
  for (const auto& r : records) {
    buf += serialize_record(r);
    buf += '\n';
  }
  write_file(path, buf);
  return compute_stats(records);
}

std::vector<InstructionRecord> read_records_jsonl(const std::string& path) {
  return parse_records_jsonl(read_file(path));
}

MixStats compute_stats(const std::vector<InstructionRecord>& records) {
  MixStats stats;
  Sha256 h;
  for (const auto& r : records) {
    h.update(serialize_record(r));
    h.update("\n");
    ++stats.per_source[r.meta.source_dataset];
    ++stats.per_task[std::string(to_string(r.meta.task_kind))];
    ++stats.total;
  }
  stats.digest = h.hex_digest();
  return stats;
}

std::string MixStats::serialize() const {
  json j;
  j["total"] = total;
  j["per_source"] = per_source;
  j["per_task"] = per_task;
  j["digest"] = digest;
  return j.dump(2);
}

std::string emit_training_recipe(const MixStats& stats,
                                 const std::string& mix_name) {
  json j;
  j["mix_name"] = mix_name;
  j["mix_digest"] = stats.digest;
  j["total_samples"] = stats.total;
  j["per_device_batch_size"] = 4;
  j["learning_rate"] = 1e-5;
  j["warmup_steps"] = 500;
  j["lr_scheduler"] = "linear";
  j["epochs"] = 3;
  return j.dump(2);
}

}  // namespace bioinstruct
