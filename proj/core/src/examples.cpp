#include "bioinstruct/examples.hpp"

namespace bioinstruct {

TaskKind task_kind_of(const CanonicalExample& example) {
  struct Visitor {
    TaskKind operator()(const NerExample&) const { return TaskKind::Ner; }
    TaskKind operator()(const ReExample&) const { return TaskKind::Re; }
    TaskKind operator()(const NliExample&) const { return TaskKind::Nli; }
    TaskKind operator()(const DocExample&) const { return TaskKind::DocCls; }
    TaskKind operator()(const QaExample&) const { return TaskKind::Qa; }
  };
  return std::visit(Visitor{}, example);
}

const std::string& id_of(const CanonicalExample& example) {
  return std::visit([](const auto& e) -> const std::string& { return e.id; },
                    example);
}

const std::string& dataset_of(const CanonicalExample& example) {
  return std::visit(
      [](const auto& e) -> const std::string& { return e.source_dataset; },
      example);
}

Split split_of(const CanonicalExample& example) {
  return std::visit([](const auto& e) { return e.split; }, example);
}

}  // namespace bioinstruct
