#pragma once

#include <string>
#include <vector>

#include "bioinstruct/examples.hpp"
#include "bioinstruct/rng.hpp"
#include "bioinstruct/scheme.hpp"

namespace bioinstruct {

// One instruction wording. "{labels}" is the only permitted placeholder and
// expands to the scheme's label inventory.
struct Template {
  std::string id;
  std::string dataset;
  TaskKind task_kind = TaskKind::Ner;
  std::string instruction_text;
};

// The per-dataset instruction pool; every dataset ships 5 to 10 wordings and
// each converted sample draws one uniformly.
struct TemplatePool {
  std::string dataset;
  TaskKind task_kind = TaskKind::Ner;
  std::vector<Template> templates;

  static TemplatePool load(const std::string& path);
  static TemplatePool parse(const std::string& text);
  std::string serialize() const;
};

inline constexpr std::size_t kMinTemplates = 5;
inline constexpr std::size_t kMaxTemplates = 10;

// Uniform draw from the pool; advances rng.
const Template& choose_template(const TemplatePool& pool, SeededRng& rng);

// The expected model output for an example:
//   NER      one "token: LABEL" line per token
//   RE/NLI   the label string verbatim
//   DOC_CLS  labels joined by ", " in scheme order
//   QA       the answer text verbatim
// `scheme` may be null for QA.
std::string serialize_output(const CanonicalExample& example,
                             const LabelScheme* scheme);

// The record input: the example's surface text.
std::string render_input(const CanonicalExample& example);

// Builds the full instruction record: template choice, {labels} expansion,
// input rendering, output serialization and provenance metadata.
InstructionRecord build_record(const CanonicalExample& example,
                               const TemplatePool& pool,
                               const LabelScheme* scheme, SeededRng& rng);

// Converts a stream of examples deterministically: each example gets an rng
// substream derived from (seed, example id), so results do not depend on
// processing order or partitioning.
std::vector<InstructionRecord> convert_examples(
    const std::vector<CanonicalExample>& examples, const TemplatePool& pool,
    const LabelScheme* scheme, std::uint64_t seed);

// Alpaca prompt skeleton. Both preamble variants are configurable from a
// single JSON file; defaults are the canonical wordings.
struct PromptStyle {
  std::string preamble =
      "Below is an instruction that describes a task, paired with an input "
      "that provides further context. Write a response that appropriately "
      "completes the request.";
  std::string preamble_no_input =
      "Below is an instruction that describes a task. Write a response that "
      "appropriately completes the request.";

  static PromptStyle load(const std::string& path);
};

// Renders the prompt. Without the output it ends exactly at
// "### Response:\n" and is a strict prefix of the with-output rendering.
std::string render_prompt(const InstructionRecord& record, bool include_output,
                          const PromptStyle& style = {});

}  // namespace bioinstruct
