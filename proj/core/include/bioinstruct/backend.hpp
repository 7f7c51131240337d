#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bioinstruct/examples.hpp"
#include "bioinstruct/rng.hpp"

namespace bioinstruct {

// Decoding parameters sent with every generation request. Defaults favor
// deterministic, structured output: greedy decoding, stop at the next
// prompt-section marker.
struct GenerationRequest {
  std::string prompt;
  std::uint64_t max_new_tokens = 512;
  double temperature = 0.0;
  std::vector<std::string> stop = {"###"};
};

// A generation source. Implementations must be safe to call from multiple
// threads and deterministic per record id, so evaluation results do not
// depend on scheduling.
class Backend {
 public:
  virtual ~Backend() = default;

  // Returns the generation for `record`, whose rendered prompt is
  // `request.prompt`. Throws BackendError on unrecoverable failure.
  virtual std::string generate(const InstructionRecord& record,
                               const GenerationRequest& request) = 0;

  // Short description used in reports ("mock:perfect", "http:<url>", ...).
  virtual std::string describe() const = 0;
};

enum class MockMode { Perfect, Corrupt, Refuse };

// Test oracle for the parse/score path. Perfect echoes the gold output;
// corrupt applies one of three corruptions (drop a line, mangle a label,
// prepend chat filler) with probability p; refuse returns a fixed refusal.
// Corruption is a pure function of (seed, record id), so the ledger can be
// recomputed after the fact and parallel runs stay deterministic.
class MockBackend : public Backend {
 public:
  MockBackend(MockMode mode, double corrupt_p = 0.0, std::uint64_t seed = 0);

  std::string generate(const InstructionRecord& record,
                       const GenerationRequest& request) override;
  std::string describe() const override;

  bool would_corrupt(const std::string& record_id) const;
  std::uint64_t corruption_count(
      const std::vector<InstructionRecord>& records) const;

 private:
  MockMode mode_;
  double corrupt_p_;
  std::uint64_t seed_;
};

// Serves generations from a JSONL file of {"record_id": ..., "text": ...}.
// Every evaluated record must be covered exactly once; extra ids are
// ignored with a warning.
class FileBackend : public Backend {
 public:
  // `records` is the evaluation set the file must cover.
  FileBackend(const std::string& path,
              const std::vector<InstructionRecord>& records,
              std::vector<std::string>* warnings = nullptr);

  std::string generate(const InstructionRecord& record,
                       const GenerationRequest& request) override;
  std::string describe() const override;

 private:
  std::string path_;
  std::map<std::string, std::string> generations_;
};

struct HttpConfig {
  std::string endpoint;        // http://host:port/path
  std::string auth_env;        // env var holding the bearer token; may be ""
  std::uint64_t max_retries = 3;  // total attempts
  std::uint64_t backoff_ms = 250;  // doubles per retry
  bool chat_style = false;     // messages-array adapter
  double timeout_s = 30.0;
};

// POSTs {"prompt", "max_new_tokens", "temperature", "stop"} and expects
// {"text": ...}; retries timeouts and 5xx responses with exponential
// backoff. The chat adapter wraps the prompt in a messages array and reads
// choices[0].message.content instead.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpConfig config);
  ~HttpBackend() override;

  std::string generate(const InstructionRecord& record,
                       const GenerationRequest& request) override;
  std::string describe() const override;

 private:
  HttpConfig config_;
  std::string token_;
};

}  // namespace bioinstruct
