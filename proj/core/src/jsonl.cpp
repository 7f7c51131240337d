#include "bioinstruct/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "bioinstruct/error.hpp"

namespace bioinstruct {

namespace {

json base_fields(const std::string& task, const std::string& id,
                 const std::string& dataset, Split split) {
  json j;
  j["task"] = task;
  j["id"] = id;
  j["source_dataset"] = dataset;
  j["split"] = std::string(to_string(split));
  return j;
}

std::string require_string(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw ParseError(std::string("missing or non-string field '") + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

json to_json(const NerExample& e) {
  json j = base_fields("NER", e.id, e.source_dataset, e.split);
  j["tokens"] = e.tokens;
  j["labels"] = e.labels;
  return j;
}

json to_json(const ReExample& e) {
  json j = base_fields("RE", e.id, e.source_dataset, e.split);
  j["text"] = e.text;
  j["label"] = e.label;
  return j;
}

json to_json(const NliExample& e) {
  json j = base_fields("NLI", e.id, e.source_dataset, e.split);
  j["premise"] = e.premise;
  j["hypothesis"] = e.hypothesis;
  j["label"] = e.label;
  return j;
}

json to_json(const DocExample& e) {
  json j = base_fields("DOC_CLS", e.id, e.source_dataset, e.split);
  j["text"] = e.text;
  j["labels"] = e.labels;
  return j;
}

json to_json(const QaExample& e) {
  json j = base_fields("QA", e.id, e.source_dataset, e.split);
  j["question"] = e.question;
  if (e.context) j["context"] = *e.context;
  j["answer"] = e.answer;
  return j;
}

json to_json(const CanonicalExample& e) {
  return std::visit([](const auto& x) { return to_json(x); }, e);
}

json to_json(const InstructionRecord& r) {
  json meta;
  meta["task_kind"] = std::string(to_string(r.meta.task_kind));
  meta["source_dataset"] = r.meta.source_dataset;
  meta["source_id"] = r.meta.source_id;
  meta["template_id"] = r.meta.template_id;
  meta["split"] = std::string(to_string(r.meta.split));

  json j;
  j["instruction"] = r.instruction;
  j["input"] = r.input;
  j["output"] = r.output;
  j["meta"] = std::move(meta);
  return j;
}

CanonicalExample example_from_json(const json& j) {
  const std::string task = require_string(j, "task");
  const std::string id = require_string(j, "id");
  const std::string dataset = require_string(j, "source_dataset");
  const Split split = split_from_string(require_string(j, "split"));

  if (task == "NER") {
    NerExample e{id, dataset, split, {}, {}};
    e.tokens = j.at("tokens").get<std::vector<std::string>>();
    e.labels = j.at("labels").get<std::vector<std::string>>();
    return e;
  }
  if (task == "RE") {
    return ReExample{id, dataset, split, require_string(j, "text"),
                     require_string(j, "label")};
  }
  if (task == "NLI") {
    return NliExample{id,
                      dataset,
                      split,
                      require_string(j, "premise"),
                      require_string(j, "hypothesis"),
                      require_string(j, "label")};
  }
  if (task == "DOC_CLS") {
    DocExample e{id, dataset, split, require_string(j, "text"), {}};
    e.labels = j.at("labels").get<std::set<std::string>>();
    return e;
  }
  if (task == "QA") {
    QaExample e{id, dataset, split, require_string(j, "question"), std::nullopt,
                ""};
    if (j.contains("context")) e.context = require_string(j, "context");
    e.answer = require_string(j, "answer");
    return e;
  }
  throw ParseError("unknown example task '" + task + "'");
}

InstructionRecord record_from_json(const json& j) {
  InstructionRecord r;
  r.instruction = require_string(j, "instruction");
  r.input = require_string(j, "input");
  r.output = require_string(j, "output");
  const auto it = j.find("meta");
  if (it == j.end() || !it->is_object()) {
    throw ParseError("missing 'meta' object");
  }
  r.meta.task_kind = task_kind_from_string(require_string(*it, "task_kind"));
  r.meta.source_dataset = require_string(*it, "source_dataset");
  r.meta.source_id = require_string(*it, "source_id");
  r.meta.template_id = require_string(*it, "template_id");
  r.meta.split = split_from_string(require_string(*it, "split"));
  return r;
}

std::string serialize_example(const CanonicalExample& e) {
  return to_json(e).dump();
}

std::string serialize_record(const InstructionRecord& r) {
  return to_json(r).dump();
}

namespace {

json parse_json_line(std::string_view line, std::size_t lineno) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError(lineno, "malformed JSON object");
  }
  return j;
}

}  // namespace

CanonicalExample deserialize_example(std::string_view line) {
  try {
    return example_from_json(parse_json_line(line, 1));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed example: ") + e.what());
  }
}

InstructionRecord deserialize_record(std::string_view line) {
  try {
    return record_from_json(parse_json_line(line, 1));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed record: ") + e.what());
  }
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    if (start == text.size()) {
      break;
    }
    std::size_t end = text.find('\n', start);
    std::string_view line;
    if (end == std::string_view::npos) {
      line = text.substr(start);
      start = text.size();
    } else {
      line = text.substr(start, end - start);
      start = end + 1;
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
  }
  return lines;
}

template <typename T, typename Fn>
static std::vector<T> parse_jsonl_impl(std::string_view text, Fn from_json) {
  std::vector<T> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    try {
      out.push_back(from_json(parse_json_line(lines[i], i + 1)));
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(i + 1, e.what());
    } catch (const std::exception& e) {
      throw ParseError(i + 1, e.what());
    }
  }
  return out;
}

std::vector<CanonicalExample> parse_examples_jsonl(std::string_view text) {
  return parse_jsonl_impl<CanonicalExample>(text, example_from_json);
}

std::vector<InstructionRecord> parse_records_jsonl(std::string_view text) {
  return parse_jsonl_impl<InstructionRecord>(text, record_from_json);
}

std::vector<CanonicalExample> read_examples_jsonl(const std::string& path) {
  return parse_examples_jsonl(read_file(path));
}

void write_examples_jsonl(const std::vector<CanonicalExample>& examples,
                          const std::string& path) {
  std::string buf;
  for (const auto& e : examples) {
    buf += serialize_example(e);
    buf += '\n';
  }
  write_file(path, buf);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace bioinstruct
