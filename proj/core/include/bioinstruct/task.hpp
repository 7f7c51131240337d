#pragma once

#include <string>
#include <string_view>

#include "bioinstruct/error.hpp"

namespace bioinstruct {

// The closed set of task families the toolkit handles.
enum class TaskKind { Ner, Re, Nli, DocCls, Qa };

enum class Split { Train, Dev, Test };

inline std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::Ner:
      return "NER";
    case TaskKind::Re:
      return "RE";
    case TaskKind::Nli:
      return "NLI";
    case TaskKind::DocCls:
      return "DOC_CLS";
    case TaskKind::Qa:
      return "QA";
  }
  return "?";
}

inline TaskKind task_kind_from_string(std::string_view s) {
  if (s == "NER") return TaskKind::Ner;
  if (s == "RE") return TaskKind::Re;
  if (s == "NLI") return TaskKind::Nli;
  if (s == "DOC_CLS") return TaskKind::DocCls;
  if (s == "QA") return TaskKind::Qa;
  throw ValidationError("unknown task kind: " + std::string(s));
}

inline std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train:
      return "train";
    case Split::Dev:
      return "dev";
    case Split::Test:
      return "test";
  }
  return "?";
}

inline Split split_from_string(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "dev") return Split::Dev;
  if (s == "test") return Split::Test;
  throw ValidationError("unknown split: " + std::string(s));
}

}  // namespace bioinstruct
