#include <cstdlib>

#include "bioinstruct/backend.hpp"
#include "bioinstruct/error.hpp"
#include "bioinstruct/jsonl.hpp"

namespace bioinstruct {

namespace {

constexpr const char* kRefusal =
    "I'm sorry, but I cannot help with that request.";
constexpr const char* kFiller = "Sure! Here is what I found for you.";
constexpr const char* kMangled = "???";

enum class Corruption { DropLine, MangleLabel, PrependFiller };

}  // namespace

MockBackend::MockBackend(MockMode mode, double corrupt_p, std::uint64_t seed)
    : mode_(mode), corrupt_p_(corrupt_p), seed_(seed) {
  if (mode == MockMode::Corrupt && (corrupt_p < 0.0 || corrupt_p > 1.0)) {
    throw ValidationError("corruption probability must be in [0, 1]");
  }
}

bool MockBackend::would_corrupt(const std::string& record_id) const {
  if (mode_ != MockMode::Corrupt) return false;
  SeededRng rng = SeededRng(seed_).derive(record_id);
  return rng.next_double() < corrupt_p_;
}

std::uint64_t MockBackend::corruption_count(
    const std::vector<InstructionRecord>& records) const {
  std::uint64_t n = 0;
  for (const auto& r : records) {
    if (would_corrupt(r.meta.source_id)) ++n;
  }
  return n;
}

std::string MockBackend::generate(const InstructionRecord& record,
                                  const GenerationRequest&) {
  switch (mode_) {
    case MockMode::Perfect:
      return record.output;
    case MockMode::Refuse:
      return kRefusal;
    case MockMode::Corrupt:
      break;
  }

  SeededRng rng = SeededRng(seed_).derive(record.meta.source_id);
  if (!(rng.next_double() < corrupt_p_)) return record.output;

  const auto kind = static_cast<Corruption>(rng.next_below(3));
  switch (kind) {
    case Corruption::DropLine: {
      const auto lines = split_lines(record.output);
      if (lines.size() <= 1) return "";
      const std::size_t victim =
          static_cast<std::size_t>(rng.next_below(lines.size()));
      std::string out;
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i == victim) continue;
        if (!out.empty()) out += '\n';
        out += lines[i];
      }
      return out;
    }
    case Corruption::MangleLabel: {
      // Replace the label part of one line ("token: LABEL") or, for
      // single-label outputs, the whole label.
      auto lines = split_lines(record.output);
      if (lines.empty()) return kMangled;
      const std::size_t victim =
          static_cast<std::size_t>(rng.next_below(lines.size()));
      const std::size_t sep = lines[victim].rfind(": ");
      if (sep == std::string::npos) {
        lines[victim] = kMangled;
      } else {
        lines[victim] = lines[victim].substr(0, sep + 2) + kMangled;
      }
      std::string out;
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i > 0) out += '\n';
        out += lines[i];
      }
      return out;
    }
    case Corruption::PrependFiller:
      return std::string(kFiller) + "\n" + record.output;
  }
  return record.output;
}

std::string MockBackend::describe() const {
  switch (mode_) {
    case MockMode::Perfect:
      return "mock:perfect";
    case MockMode::Refuse:
      return "mock:refuse";
    case MockMode::Corrupt:
      return "mock:corrupt(p=" + std::to_string(corrupt_p_) + ")";
  }
  return "mock";
}

FileBackend::FileBackend(const std::string& path,
                         const std::vector<InstructionRecord>& records,
                         std::vector<std::string>* warnings)
    : path_(path) {
  const auto lines = split_lines(read_file(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    json j = json::parse(lines[i], nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError(i + 1, "malformed prediction line");
    }
    std::string id;
    std::string text;
    try {
      id = j.at("record_id").get<std::string>();
      text = j.at("text").get<std::string>();
    } catch (const json::exception& e) {
      throw ParseError(i + 1, e.what());
    }
    if (!generations_.emplace(id, std::move(text)).second) {
      throw DataError("duplicate record_id '" + id + "' in " + path);
    }
  }

  std::vector<std::string> missing;
  std::size_t used = 0;
  for (const auto& r : records) {
    if (generations_.count(r.meta.source_id) == 0) {
      missing.push_back(r.meta.source_id);
    } else {
      ++used;
    }
  }
  if (!missing.empty()) {
    std::string msg = "predictions file " + path + " is missing " +
                      std::to_string(missing.size()) + " record(s):";
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i) {
      msg += " " + missing[i];
    }
    if (missing.size() > 10) msg += " ...";
    throw DataError(msg);
  }
  if (warnings != nullptr && used < generations_.size()) {
    warnings->push_back(std::to_string(generations_.size() - used) +
                        " prediction(s) in " + path +
                        " do not match any evaluated record; ignored");
  }
}

std::string FileBackend::generate(const InstructionRecord& record,
                                  const GenerationRequest&) {
  const auto it = generations_.find(record.meta.source_id);
  if (it == generations_.end()) {
    throw BackendError("no prediction for record '" + record.meta.source_id +
                       "'");
  }
  return it->second;
}

std::string FileBackend::describe() const { return "file:" + path_; }

}  // namespace bioinstruct
