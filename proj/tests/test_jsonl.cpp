#include "doctest.h"

#include "bioinstruct/error.hpp"
#include "bioinstruct/fixtures.hpp"
#include "bioinstruct/jsonl.hpp"
#include "bioinstruct/rng.hpp"

using namespace bioinstruct;

TEST_CASE("canonical example round trip, all task kinds") {
  SeededRng rng(7);
  const auto scheme = default_scheme("i2b2-2012");
  const auto flat = default_scheme("hoc");

  std::vector<CanonicalExample> all;
  for (auto& e : make_ner_examples("i2b2-2012", scheme, Split::Dev, 50, rng))
    all.push_back(e);
  for (auto& e : make_re_examples("gad", default_scheme("gad"), Split::Train,
                                  50, rng))
    all.push_back(e);
  for (auto& e : make_nli_examples("mednli", Split::Test, 50, rng))
    all.push_back(e);
  for (auto& e : make_doc_examples("hoc", flat, Split::Train, 50, rng))
    all.push_back(e);
  for (auto& e : make_qa_examples("chatdoctor", Split::Train, 50, rng))
    all.push_back(e);

  for (const auto& e : all) {
    const auto back = deserialize_example(serialize_example(e));
    CHECK(back == e);
  }
}

TEST_CASE("instruction record round trip preserves every field") {
  InstructionRecord r;
  r.instruction = "Label the tokens.";
  r.input = "Insulin resistance is";
  r.output = "Insulin: B\nresistance: I\nis: O";
  r.meta = {TaskKind::Ner, "ncbi-disease", "ncbi-disease-train-0", "t03",
            Split::Train};
  CHECK(deserialize_record(serialize_record(r)) == r);
}

TEST_CASE("record field order is stable") {
  InstructionRecord r;
  r.instruction = "i";
  r.input = "x";
  r.output = "o";
  r.meta = {TaskKind::Re, "gad", "g1", "t01", Split::Train};
  const std::string line = serialize_record(r);
  CHECK(line.find("\"instruction\"") < line.find("\"input\""));
  CHECK(line.find("\"input\"") < line.find("\"output\""));
  CHECK(line.find("\"output\"") < line.find("\"meta\""));
  CHECK(serialize_record(r) == serialize_record(r));
}

TEST_CASE("QA context absence survives the round trip") {
  QaExample with{"q1", "ds", Split::Train, "why?", "some context", "answer"};
  QaExample without{"q2", "ds", Split::Train, "why?", std::nullopt, "answer"};
  CHECK(deserialize_example(serialize_example(with)) ==
        CanonicalExample{with});
  CHECK(deserialize_example(serialize_example(without)) ==
        CanonicalExample{without});
  CHECK(serialize_example(without).find("context") == std::string::npos);
}

TEST_CASE("malformed lines report their line number") {
  const std::string text =
      R"({"task":"NLI","id":"a","source_dataset":"d","split":"test","premise":"p","hypothesis":"h","label":"Neutral"})"
      "\nnot json\n";
  try {
    parse_examples_jsonl(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("truncated record line fails with its line number") {
  InstructionRecord r;
  r.instruction = "i";
  r.input = "x";
  r.output = "o";
  r.meta = {TaskKind::Re, "gad", "g1", "t01", Split::Train};
  std::string text = serialize_record(r) + "\n" + serialize_record(r);
  text.resize(text.size() - 10);  // chop the tail of line 2
  try {
    parse_records_jsonl(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("unknown task discriminator fails") {
  CHECK_THROWS_AS(
      deserialize_example(R"({"task":"FOO","id":"a","source_dataset":"d","split":"test"})"),
      ParseError);
}

TEST_CASE("split_lines handles CRLF and missing trailing newline") {
  const auto lines = split_lines("a\r\nb\nc");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "a");
  CHECK(lines[1] == "b");
  CHECK(lines[2] == "c");
  CHECK(split_lines("x\n").size() == 1);
  CHECK(split_lines("").empty());
}
