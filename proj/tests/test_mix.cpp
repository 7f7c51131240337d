#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"

#include "bioinstruct/error.hpp"
#include "bioinstruct/jsonl.hpp"
#include "bioinstruct/mix.hpp"

#include "support/test_util.hpp"

using namespace bioinstruct;

namespace {

std::vector<InstructionRecord> records_for(const std::string& source,
                                           std::size_t n,
                                           TaskKind kind = TaskKind::Qa) {
  std::vector<InstructionRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    InstructionRecord r;
    r.instruction = "instruction";
    r.input = "input " + std::to_string(i);
    r.output = "output " + std::to_string(i);
    r.meta = {kind, source, source + "-train-" + std::to_string(i), "t0",
              Split::Train};
    out.push_back(std::move(r));
  }
  return out;
}

std::multiset<std::string> ids_of(const std::vector<InstructionRecord>& rs) {
  std::multiset<std::string> ids;
  for (const auto& r : rs) ids.insert(r.meta.source_id);
  return ids;
}

}  // namespace

TEST_CASE("sample_source: exact quota") {
  SeededRng rng(1);
  const auto records = records_for("a", 1000);
  const auto sample = sample_source(records, 500, rng, "a");
  CHECK(sample.size() == 500);
  // Sample is a sub-multiset of the input.
  auto all = ids_of(records);
  for (const auto& r : sample) {
    auto it = all.find(r.meta.source_id);
    REQUIRE(it != all.end());
    all.erase(it);
  }
}

TEST_CASE("sample_source: ALL is identity") {
  SeededRng rng(1);
  const auto records = records_for("a", 40);
  CHECK(sample_source(records, std::nullopt, rng, "a") == records);
}

TEST_CASE("sample_source: quota above size names the source") {
  SeededRng rng(1);
  CHECK_THROWS_WITH_AS(sample_source(records_for("tiny", 5), 10, rng, "tiny"),
                       doctest::Contains("tiny"), DataError);
}

TEST_CASE("sample_source: uniform over 10k draws of 1 from 4") {
  const auto records = records_for("a", 4);
  std::map<std::string, int> counts;
  SeededRng rng(77);
  for (int i = 0; i < 10000; ++i) {
    const auto s = sample_source(records, 1, rng, "a");
    REQUIRE(s.size() == 1);
    ++counts[s[0].meta.source_id];
  }
  REQUIRE(counts.size() == 4);
  for (const auto& [id, n] : counts) {
    // Binomial(10000, 1/4): 5 sigma band around 2500.
    CHECK(n >= 2250);
    CHECK(n <= 2750);
  }
}

TEST_CASE("build_mix: multiset conservation and counts") {
  MixSpec spec;
  spec.name = "two";
  spec.seed = 9;
  spec.entries = {{"a", 500}, {"b", 500}};
  std::map<std::string, std::vector<InstructionRecord>> sources;
  sources["a"] = records_for("a", 500);
  sources["b"] = records_for("b", 500);

  const auto mixed = build_mix(spec, sources);
  REQUIRE(mixed.size() == 1000);
  std::multiset<std::string> expected = ids_of(sources["a"]);
  for (const auto& id : ids_of(sources["b"])) expected.insert(id);
  CHECK(ids_of(mixed) == expected);
}

TEST_CASE("build_mix: deterministic bytes, seed changes the permutation") {
  MixSpec spec;
  spec.name = "m";
  spec.seed = 4242;
  spec.entries = {{"a", std::nullopt}, {"b", 50}};
  std::map<std::string, std::vector<InstructionRecord>> sources;
  sources["a"] = records_for("a", 120);
  sources["b"] = records_for("b", 80);

  testutil::TempDir dir("mix");
  const auto first = build_mix(spec, sources);
  const auto second = build_mix(spec, sources);
  const auto s1 = write_records_jsonl(first, dir.file("one.jsonl"));
  const auto s2 = write_records_jsonl(second, dir.file("two.jsonl"));
  CHECK(read_file(dir.file("one.jsonl")) == read_file(dir.file("two.jsonl")));
  CHECK(s1.digest == s2.digest);

  MixSpec reseeded = spec;
  reseeded.seed = 4243;
  const auto third = build_mix(reseeded, sources);
  CHECK(third != first);
}

TEST_CASE("build_mix: missing source") {
  MixSpec spec;
  spec.name = "m";
  spec.seed = 1;
  spec.entries = {{"ghost", std::nullopt}};
  CHECK_THROWS_WITH_AS(build_mix(spec, {}), doctest::Contains("ghost"),
                       DataError);
}

TEST_CASE("ablation-style spec at 1/1000 scale") {
  MixSpec spec;
  spec.name = "ablation-expanded";
  spec.seed = 8;
  spec.entries = {{"pubmedqa", 50000},
                  {"medqa", 50000},
                  {"umls", std::nullopt},
                  {"umls-relations", std::nullopt},
                  {"chatdoctor", 50000}};
  const MixSpec scaled = spec.scaled(1000);

  std::map<std::string, std::vector<InstructionRecord>> sources;
  sources["pubmedqa"] = records_for("pubmedqa", 80);
  sources["medqa"] = records_for("medqa", 80);
  sources["umls"] = records_for("umls", 33);
  sources["umls-relations"] = records_for("umls-relations", 27);
  sources["chatdoctor"] = records_for("chatdoctor", 90);

  const auto stats = compute_stats(build_mix(scaled, sources));
  CHECK(stats.per_source.at("pubmedqa") == 50);
  CHECK(stats.per_source.at("medqa") == 50);
  CHECK(stats.per_source.at("umls") == 33);
  CHECK(stats.per_source.at("umls-relations") == 27);
  CHECK(stats.per_source.at("chatdoctor") == 50);
  CHECK(stats.total == 50 + 50 + 33 + 27 + 50);
}

TEST_CASE("jsonl write/read round trip and digest stability") {
  testutil::TempDir dir("roundtrip");
  const auto records = records_for("src", 64, TaskKind::Nli);
  const auto stats = write_records_jsonl(records, dir.file("r.jsonl"));
  CHECK(read_records_jsonl(dir.file("r.jsonl")) == records);
  const auto stats2 = write_records_jsonl(records, dir.file("r2.jsonl"));
  CHECK(stats.digest == stats2.digest);
  CHECK(stats.digest.size() == 64);  // SHA-256 hex
  CHECK(stats.digest == compute_stats(records).digest);
}

TEST_CASE("truncated jsonl read errors with the line number") {
  testutil::TempDir dir("truncated");
  const auto records = records_for("src", 3);
  std::string buf;
  for (const auto& r : records) buf += serialize_record(r) + "\n";
  buf.resize(buf.size() - 5);
  write_file(dir.file("t.jsonl"), buf);
  try {
    read_records_jsonl(dir.file("t.jsonl"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("stats: zero case and conservation") {
  const auto empty = compute_stats({});
  CHECK(empty.total == 0);
  CHECK(empty.per_source.empty());
  CHECK(empty.per_task.empty());

  std::vector<InstructionRecord> mixed;
  for (auto& r : records_for("qa1", 600)) mixed.push_back(r);
  for (auto& r : records_for("qa2", 400)) mixed.push_back(r);
  const auto stats = compute_stats(mixed);
  CHECK(stats.total == 1000);
  std::uint64_t sum = 0;
  for (const auto& [src, n] : stats.per_source) sum += n;
  CHECK(sum == stats.total);
  CHECK(stats.per_task.at("QA") == 1000);
}

TEST_CASE("two 50k-style QA quotas land in the task counts") {
  MixSpec spec;
  spec.name = "qa";
  spec.seed = 3;
  spec.entries = {{"chatdoctor", 500}, {"pmc-llama", 500}};
  std::map<std::string, std::vector<InstructionRecord>> sources;
  sources["chatdoctor"] = records_for("chatdoctor", 600);
  sources["pmc-llama"] = records_for("pmc-llama", 600);
  const auto stats = compute_stats(build_mix(spec, sources));
  CHECK(stats.per_task.at("QA") == 1000);
}

TEST_CASE("training recipe carries the pinned hyperparameters") {
  const auto stats = compute_stats(records_for("src", 10));
  const auto recipe = json::parse(emit_training_recipe(stats, "main"));
  CHECK(recipe.at("epochs").get<int>() == 3);
  CHECK(recipe.at("warmup_steps").get<int>() == 500);
  CHECK(recipe.at("per_device_batch_size").get<int>() == 4);
  CHECK(recipe.at("learning_rate").get<double>() == doctest::Approx(1e-5));
  CHECK(recipe.at("lr_scheduler").get<std::string>() == "linear");
  CHECK(recipe.at("mix_digest").get<std::string>() == stats.digest);
}

TEST_CASE("mix spec parse/serialize and scaling") {
  const std::string text = R"({
    "name": "main",
    "seed": 42,
    "entries": [
      {"source": "x", "quota": "ALL"},
      {"source": "y", "quota": 50000}
    ]
  })";
  const auto spec = MixSpec::parse(text);
  CHECK(spec.name == "main");
  CHECK(spec.seed == 42);
  CHECK_FALSE(spec.entries[0].quota.has_value());
  CHECK(spec.entries[1].quota == 50000);

  const auto scaled = spec.scaled(100);
  CHECK_FALSE(scaled.entries[0].quota.has_value());
  CHECK(scaled.entries[1].quota == 500);

  CHECK_THROWS_AS(MixSpec::parse(R"({"name":"m","seed":1,
    "entries":[{"source":"x","quota":"ALL"},{"source":"x","quota":3}]})"),
                  ParseError);
  CHECK_THROWS_AS(MixSpec::parse(R"({"name":"m","seed":1,
    "entries":[{"source":"x","quota":0}]})"),
                  ParseError);
}
