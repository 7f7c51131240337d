#pragma once

#include <string>
#include <vector>

#include "bioinstruct/examples.hpp"
#include "bioinstruct/scheme.hpp"

namespace bioinstruct {

// Invariant checks. Violations are data, not failures: callers decide
// whether to reject, report, or count them.
struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Checks `example` against the invariants of its type. `scheme` may be null
// only for QA examples, which carry no label inventory.
ValidationResult validate_example(const CanonicalExample& example,
                                  const LabelScheme* scheme);

ValidationResult validate_record(const InstructionRecord& record);

// True when `text` contains at least one concept tag of the form @name$
// with a lowercase name ([a-z_]+).
bool contains_concept_tag(const std::string& text);

}  // namespace bioinstruct
