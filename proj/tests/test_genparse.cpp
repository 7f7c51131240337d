#include "doctest.h"

#include "bioinstruct/fixtures.hpp"
#include "bioinstruct/genparse.hpp"
#include "bioinstruct/templates.hpp"

#include "support/test_util.hpp"

using namespace bioinstruct;

namespace {
const LabelScheme kBare = LabelScheme::make_bio("ds", {});
const LabelScheme kNli =
    LabelScheme::make_flat("mednli", TaskKind::Nli,
                           {"Entailment", "Contradiction", "Neutral"});
}  // namespace

TEST_CASE("NER: exact serialization parses back clean") {
  const std::vector<std::string> tokens = {"Insulin", "resistance", "is"};
  const auto p =
      parse_ner_generation("Insulin: B\nresistance: I\nis: O", tokens, kBare);
  CHECK(p.labels == std::vector<std::string>{"B", "I", "O"});
  CHECK_FALSE(p.malformed);
}

TEST_CASE("NER: missing middle line recovers the rest") {
  const std::vector<std::string> tokens = {"a", "b", "c"};
  const auto p = parse_ner_generation("a: B\nc: I", tokens, kBare);
  CHECK(p.labels == std::vector<std::string>{"B", "O", "I"});
  CHECK(p.malformed);
}

TEST_CASE("NER: refusal text parses to all O") {
  const std::vector<std::string> tokens = {"x", "y"};
  const auto p = parse_ner_generation("I'm sorry, I cannot help with that.",
                                      tokens, kBare);
  CHECK(p.labels == std::vector<std::string>{"O", "O"});
  CHECK(p.malformed);
}

TEST_CASE("NER: invalid label takes O and sets malformed") {
  const auto p = parse_ner_generation("a: B\nb: QQQ", {"a", "b"}, kBare);
  CHECK(p.labels == std::vector<std::string>{"B", "O"});
  CHECK(p.malformed);
}

TEST_CASE("NER: duplicate token text aligns forward") {
  const std::vector<std::string> tokens = {"the", "pain", "the", "gain"};
  const auto p =
      parse_ner_generation("the: O\npain: B\nthe: O\ngain: B", tokens, kBare);
  CHECK(p.labels == std::vector<std::string>{"O", "B", "O", "B"});
  CHECK_FALSE(p.malformed);
}

TEST_CASE("NER: extra chatter line flags malformed but keeps alignment") {
  const std::vector<std::string> tokens = {"a", "b"};
  const auto p = parse_ner_generation(
      "Here are the labels you asked for: \na: B\nb: I", tokens, kBare);
  CHECK(p.labels == std::vector<std::string>{"B", "I"});
  CHECK(p.malformed);
}

TEST_CASE("NER: tokens containing colons split on the last separator") {
  const std::vector<std::string> tokens = {"12:30", "dose:"};
  const auto p =
      parse_ner_generation("12:30: B\ndose:: I", tokens, kBare);
  CHECK(p.labels == std::vector<std::string>{"B", "I"});
  CHECK_FALSE(p.malformed);
}

TEST_CASE("NER: length law on arbitrary inputs") {
  SeededRng rng(21);
  const auto scheme = default_scheme("i2b2-2012");
  for (int round = 0; round < 500; ++round) {
    const std::size_t n_tokens = 1 + rng.next_below(8);
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < n_tokens; ++i) {
      tokens.push_back("tok" + std::to_string(rng.next_below(5)));
    }
    const std::string junk = testutil::random_text(rng, 150);
    const auto p = parse_ner_generation(junk, tokens, scheme);
    CHECK(p.labels.size() == tokens.size());
    for (const auto& l : p.labels) {
      CHECK((l == "O" || scheme.has_label(l)));
    }
  }
}

TEST_CASE("NER: inverse law over random fixtures") {
  SeededRng rng(31);
  const auto scheme = default_scheme("i2b2-2012");
  for (const auto& e :
       make_ner_examples("i2b2-2012", scheme, Split::Test, 100, rng)) {
    const auto out = serialize_output(CanonicalExample{e}, &scheme);
    const auto p = parse_ner_generation(out, e.tokens, scheme);
    CHECK(p.labels == e.labels);
    CHECK_FALSE(p.malformed);
  }
}

TEST_CASE("classification: exact match after normalization is clean") {
  const auto p = parse_classification_generation("entailment.", kNli);
  CHECK(p.label == "Entailment");
  CHECK_FALSE(p.malformed);
  const auto q = parse_classification_generation("  Neutral\n", kNli);
  CHECK(q.label == "Neutral");
  CHECK_FALSE(q.malformed);
}

TEST_CASE("classification: unique substring hit is malformed but scored") {
  const auto p =
      parse_classification_generation("The answer is Contradiction", kNli);
  CHECK(p.label == "Contradiction");
  CHECK(p.malformed);
}

TEST_CASE("classification: zero or multiple hits give NO_MATCH") {
  const auto none = parse_classification_generation("no idea", kNli);
  CHECK(none.label == kNoMatch);
  CHECK(none.malformed);
  const auto multi = parse_classification_generation(
      "It could be Entailment or Neutral", kNli);
  CHECK(multi.label == kNoMatch);
  CHECK(multi.malformed);
}

TEST_CASE("classification: whole-word matching, repeated label still unique") {
  const auto scheme =
      LabelScheme::make_flat("x", TaskKind::Re, {"PIP", "TeRP"});
  // "PIPeline" must not count as a PIP hit.
  const auto p = parse_classification_generation("the PIPeline", scheme);
  CHECK(p.label == kNoMatch);
  const auto q =
      parse_classification_generation("TeRP, definitely terp", scheme);
  CHECK(q.label == "TeRP");
  CHECK(q.malformed);
}

TEST_CASE("classification: totality on junk") {
  SeededRng rng(41);
  for (int i = 0; i < 300; ++i) {
    const auto p = parse_classification_generation(
        testutil::random_text(rng, 300), kNli);
    CHECK((p.label == kNoMatch || kNli.has_label(p.label)));
  }
}

TEST_CASE("multilabel: fragments split on commas and newlines") {
  const auto scheme =
      LabelScheme::make_flat("hoc", TaskKind::DocCls, {"ClassA", "ClassB"});
  const auto p = parse_multilabel_generation("ClassA, ClassB", scheme);
  CHECK(p.label_set == std::vector<std::string>{"ClassA", "ClassB"});
  CHECK_FALSE(p.malformed);
  const auto q = parse_multilabel_generation("ClassB\nClassA", scheme);
  CHECK(q.label_set == std::vector<std::string>{"ClassA", "ClassB"});
  CHECK_FALSE(q.malformed);
}

TEST_CASE("multilabel: empty generation is malformed with empty set") {
  const auto scheme =
      LabelScheme::make_flat("hoc", TaskKind::DocCls, {"ClassA"});
  const auto p = parse_multilabel_generation("", scheme);
  CHECK(p.label_set.empty());
  CHECK(p.malformed);
}

TEST_CASE("multilabel: unmatched fragment keeps the matched ones") {
  const auto scheme =
      LabelScheme::make_flat("hoc", TaskKind::DocCls, {"ClassA", "ClassB"});
  const auto p = parse_multilabel_generation("ClassA, banana", scheme);
  CHECK(p.label_set == std::vector<std::string>{"ClassA"});
  CHECK(p.malformed);
}

TEST_CASE("normalization strips punctuation and folds case") {
  CHECK(normalize_label_text("  Entailment.  ") == "entailment");
  CHECK(normalize_label_text("\"Neutral\"") == "neutral");
  CHECK(normalize_label_text("") == "");
}

// Single-edit fuzz: corrupting one character of a valid serialization either
// leaves the parse identical, flags it malformed, or lands on the exact
// serialization of a different valid labeling (which no parser could tell
// apart from a genuine answer).
TEST_CASE("monotone malformedness under single edits: NER") {
  SeededRng rng(51);
  const auto scheme = default_scheme("ncbi-disease");
  const auto examples =
      make_ner_examples("ncbi-disease", scheme, Split::Test, 12, rng);
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789:- .\n";
  for (const auto& e : examples) {
    const std::string gold = serialize_output(CanonicalExample{e}, &scheme);
    const auto baseline = parse_ner_generation(gold, e.tokens, scheme);
    REQUIRE_FALSE(baseline.malformed);
    for (std::size_t pos = 0; pos < gold.size(); ++pos) {
      for (const char c : alphabet) {
        if (gold[pos] == c) continue;
        std::string corrupted = gold;
        corrupted[pos] = c;
        const auto p = parse_ner_generation(corrupted, e.tokens, scheme);
        if (p.malformed) continue;
        if (p.labels == baseline.labels) continue;
        // Only acceptable escape: the corruption IS another valid
        // serialization (e.g. a label letter flipped to a different label).
        NerExample alt = e;
        alt.labels = p.labels;
        CHECK(serialize_output(CanonicalExample{alt}, &scheme) == corrupted);
      }
      // Deletion edit.
      std::string shorter = gold;
      shorter.erase(pos, 1);
      const auto p = parse_ner_generation(shorter, e.tokens, scheme);
      if (!p.malformed && !(p.labels == baseline.labels)) {
        NerExample alt = e;
        alt.labels = p.labels;
        CHECK(serialize_output(CanonicalExample{alt}, &scheme) == shorter);
      }
    }
  }
}

TEST_CASE("monotone malformedness under single edits: NLI") {
  const std::string gold = "Entailment";
  const auto baseline = parse_classification_generation(gold, kNli);
  REQUIRE_FALSE(baseline.malformed);
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ ._";
  for (std::size_t pos = 0; pos < gold.size(); ++pos) {
    for (const char c : alphabet) {
      if (gold[pos] == c) continue;
      std::string corrupted = gold;
      corrupted[pos] = c;
      const auto p = parse_classification_generation(corrupted, kNli);
      // The three labels are far apart in edit distance, so every edit is
      // either case-insensitively identical or flagged.
      if (!p.malformed) CHECK(p.label == baseline.label);
    }
  }
}
