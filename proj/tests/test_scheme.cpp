#include "doctest.h"

#include "bioinstruct/error.hpp"
#include "bioinstruct/scheme.hpp"

using namespace bioinstruct;

TEST_CASE("bare BIO expansion") {
  CHECK(expand_bio_scheme({}) == std::vector<std::string>{"O", "B", "I"});
}

TEST_CASE("single category expansion") {
  CHECK(expand_bio_scheme({"PROBLEM"}) ==
        std::vector<std::string>{"O", "B-PROBLEM", "I-PROBLEM"});
}

TEST_CASE("six categories give thirteen labels in input order") {
  const std::vector<std::string> cats = {"PROBLEM",       "TEST",
                                         "TREATMENT",     "CLINICAL_DEPT",
                                         "EVIDENTIAL",    "OCCURRENCE"};
  const auto labels = expand_bio_scheme(cats);
  REQUIRE(labels.size() == 13);
  CHECK(labels[0] == "O");
  for (std::size_t i = 0; i < cats.size(); ++i) {
    CHECK(labels[1 + 2 * i] == "B-" + cats[i]);
    CHECK(labels[2 + 2 * i] == "I-" + cats[i]);
  }
}

TEST_CASE("expansion length law") {
  std::vector<std::string> cats;
  for (int n = 0; n < 20; ++n) {
    CHECK(expand_bio_scheme(cats).size() == 1 + 2 * cats.size());
    cats.push_back("C" + std::to_string(n));
  }
}

TEST_CASE("duplicate and malformed categories are rejected") {
  CHECK_THROWS_AS(expand_bio_scheme({"A", "A"}), ValidationError);
  CHECK_THROWS_AS(expand_bio_scheme({"A B"}), ValidationError);
  CHECK_THROWS_AS(expand_bio_scheme({""}), ValidationError);
}

TEST_CASE("flat schemes reject duplicates, empties and the sentinel") {
  CHECK_THROWS_AS(LabelScheme::make_flat("x", TaskKind::Re, {}),
                  ValidationError);
  CHECK_THROWS_AS(LabelScheme::make_flat("x", TaskKind::Re, {"a", "a"}),
                  ValidationError);
  CHECK_THROWS_AS(LabelScheme::make_flat("x", TaskKind::Re, {kNoMatch}),
                  ValidationError);
}

TEST_CASE("label lookup and inventory") {
  const auto s = LabelScheme::make_bio("ner", {"X"});
  CHECK(s.has_label("B-X"));
  CHECK_FALSE(s.has_label("B-Y"));
  CHECK(s.label_index("O") == 0);
  CHECK(s.label_index("missing") == -1);
  CHECK(s.inventory() == "O, B-X, I-X");
}
