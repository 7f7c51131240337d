#include "bioinstruct/templates.hpp"

#include <algorithm>
#include <unordered_set>

#include "bioinstruct/error.hpp"
#include "bioinstruct/jsonl.hpp"

namespace bioinstruct {

namespace {

void validate_pool(const TemplatePool& pool) {
  if (pool.dataset.empty()) throw ValidationError("pool has no dataset name");
  if (pool.templates.size() < kMinTemplates ||
      pool.templates.size() > kMaxTemplates) {
    throw ValidationError(
        "pool '" + pool.dataset + "' has " +
        std::to_string(pool.templates.size()) +
        " templates, expected between " + std::to_string(kMinTemplates) +
        " and " + std::to_string(kMaxTemplates));
  }
  std::unordered_set<std::string> ids;
  for (const auto& t : pool.templates) {
    if (t.instruction_text.empty()) {
      throw ValidationError("empty instruction text in pool '" + pool.dataset +
                            "'");
    }
    if (!ids.insert(t.id).second) {
      throw ValidationError("duplicate template id '" + t.id + "' in pool '" +
                            pool.dataset + "'");
    }
    if (t.task_kind == TaskKind::Qa &&
        t.instruction_text.find("{labels}") != std::string::npos) {
      throw ValidationError("QA template '" + t.id +
                            "' uses {labels} but QA has no label scheme");
    }
  }
}

std::string expand_labels(const std::string& text, const LabelScheme* scheme) {
  const std::string placeholder = "{labels}";
  std::string out = text;
  std::size_t pos = 0;
  while ((pos = out.find(placeholder, pos)) != std::string::npos) {
    if (scheme == nullptr) {
      throw ValidationError("{labels} used without a label scheme");
    }
    const std::string inv = scheme->inventory();
    out.replace(pos, placeholder.size(), inv);
    pos += inv.size();
  }
  return out;
}

}  // namespace

TemplatePool TemplatePool::load(const std::string& path) {
  try {
    return parse(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

TemplatePool TemplatePool::parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("template pool is not a JSON object");
  }
  TemplatePool pool;
  try {
    pool.dataset = j.at("dataset").get<std::string>();
    pool.task_kind = task_kind_from_string(j.at("task_kind").get<std::string>());
    for (const auto& t : j.at("templates")) {
      Template tpl;
      tpl.id = t.at("id").get<std::string>();
      tpl.dataset = pool.dataset;
      tpl.task_kind = pool.task_kind;
      tpl.instruction_text = t.at("instruction").get<std::string>();
      pool.templates.push_back(std::move(tpl));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad template pool: ") + e.what());
  }
  validate_pool(pool);
  return pool;
}

std::string TemplatePool::serialize() const {
  json j;
  j["dataset"] = dataset;
  j["task_kind"] = std::string(to_string(task_kind));
  json arr = json::array();
  for (const auto& t : templates) {
    json tj;
    tj["id"] = t.id;
    tj["instruction"] = t.instruction_text;
    arr.push_back(std::move(tj));
  }
  j["templates"] = std::move(arr);
  return j.dump(2);
}

const Template& choose_template(const TemplatePool& pool, SeededRng& rng) {
  if (pool.templates.empty()) {
    throw ValidationError("pool '" + pool.dataset + "' is empty");
  }
  const std::uint64_t u = rng.next_below(pool.templates.size());
  return pool.templates[u];
}

std::string serialize_output(const CanonicalExample& example,
                             const LabelScheme* scheme) {
  struct Visitor {
    const LabelScheme* scheme;

    std::string operator()(const NerExample& e) const {
      std::string out;
      for (std::size_t i = 0; i < e.tokens.size(); ++i) {
        if (i > 0) out += '\n';
        out += e.tokens[i];
        out += ": ";
        out += e.labels[i];
      }
      return out;
    }
    std::string operator()(const ReExample& e) const { return e.label; }
    std::string operator()(const NliExample& e) const { return e.label; }
    std::string operator()(const DocExample& e) const {
      // Scheme order keeps the join deterministic.
      std::vector<std::string> ordered(e.labels.begin(), e.labels.end());
      if (scheme != nullptr) {
        std::sort(ordered.begin(), ordered.end(),
                  [this](const std::string& a, const std::string& b) {
                    return scheme->label_index(a) < scheme->label_index(b);
                  });
      }
      std::string out;
      for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (i > 0) out += ", ";
        out += ordered[i];
      }
      return out;
    }
    std::string operator()(const QaExample& e) const { return e.answer; }
  };
  return std::visit(Visitor{scheme}, example);
}

std::string render_input(const CanonicalExample& example) {
  struct Visitor {
    std::string operator()(const NerExample& e) const {
      std::string out;
      for (std::size_t i = 0; i < e.tokens.size(); ++i) {
        if (i > 0) out += ' ';
        out += e.tokens[i];
      }
      return out;
    }
    std::string operator()(const ReExample& e) const { return e.text; }
    std::string operator()(const NliExample& e) const {
      return "Premise: " + e.premise + "\nHypothesis: " + e.hypothesis;
    }
    std::string operator()(const DocExample& e) const { return e.text; }
    std::string operator()(const QaExample& e) const {
      if (e.context) return e.question + "\n" + *e.context;
      return e.question;
    }
  };
  return std::visit(Visitor{}, example);
}

InstructionRecord build_record(const CanonicalExample& example,
                               const TemplatePool& pool,
                               const LabelScheme* scheme, SeededRng& rng) {
  if (pool.dataset != dataset_of(example)) {
    throw DataError("template pool '" + pool.dataset +
                    "' does not match dataset '" + dataset_of(example) + "'");
  }
  const Template& tpl = choose_template(pool, rng);
  InstructionRecord r;
  r.instruction = expand_labels(tpl.instruction_text, scheme);
  r.input = render_input(example);
  r.output = serialize_output(example, scheme);
  r.meta.task_kind = task_kind_of(example);
  r.meta.source_dataset = dataset_of(example);
  r.meta.source_id = id_of(example);
  r.meta.template_id = tpl.id;
  r.meta.split = split_of(example);
  return r;
}

std::vector<InstructionRecord> convert_examples(
    const std::vector<CanonicalExample>& examples, const TemplatePool& pool,
    const LabelScheme* scheme, std::uint64_t seed) {
  const SeededRng base(seed);
  std::vector<InstructionRecord> out;
  out.reserve(examples.size());
  for (const auto& e : examples) {
    SeededRng sub = base.derive(id_of(e));
    out.push_back(build_record(e, pool, scheme, sub));
  }
  return out;
}

PromptStyle PromptStyle::load(const std::string& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("prompt style is not a JSON object");
  }
  PromptStyle s;
  s.preamble = j.value("preamble", s.preamble);
  s.preamble_no_input = j.value("preamble_no_input", s.preamble_no_input);
  return s;
}

std::string render_prompt(const InstructionRecord& record, bool include_output,
                          const PromptStyle& style) {
  std::string out =
      record.input.empty() ? style.preamble_no_input : style.preamble;
  out += "\n\n### Instruction:\n";
  out += record.instruction;
  out += "\n\n";
  if (!record.input.empty()) {
    out += "### Input:\n";
    out += record.input;
    out += "\n\n";
  }
  out += "### Response:\n";
  if (include_output) {
    out += record.output;
    out += '\n';
  }
  return out;
}

}  // namespace bioinstruct
