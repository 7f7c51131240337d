#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bioinstruct/examples.hpp"

namespace bioinstruct {

// Line-delimited JSON is the interchange format for canonical examples and
// instruction records: UTF-8, one object per line, stable field order so
// content digests are reproducible.

using json = nlohmann::ordered_json;

json to_json(const NerExample& e);
json to_json(const ReExample& e);
json to_json(const NliExample& e);
json to_json(const DocExample& e);
json to_json(const QaExample& e);
json to_json(const CanonicalExample& e);
json to_json(const InstructionRecord& r);

CanonicalExample example_from_json(const json& j);
InstructionRecord record_from_json(const json& j);

// Single-line serializations (no trailing newline).
std::string serialize_example(const CanonicalExample& e);
std::string serialize_record(const InstructionRecord& r);

// Inverse of the serializers; throws ParseError on malformed input.
CanonicalExample deserialize_example(std::string_view line);
InstructionRecord deserialize_record(std::string_view line);

std::vector<CanonicalExample> parse_examples_jsonl(std::string_view text);
std::vector<InstructionRecord> parse_records_jsonl(std::string_view text);

std::vector<CanonicalExample> read_examples_jsonl(const std::string& path);
void write_examples_jsonl(const std::vector<CanonicalExample>& examples,
                          const std::string& path);

// Reads a whole file; throws DataError when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// Splits text into lines; accepts both \n and \r\n endings. A trailing
// newline does not produce an empty final line.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace bioinstruct
