#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bioinstruct/examples.hpp"
#include "bioinstruct/manifest.hpp"
#include "bioinstruct/rng.hpp"
#include "bioinstruct/scheme.hpp"

namespace bioinstruct {

// Synthetic corpus generators, one per source format. Clinical source
// corpora cannot be redistributed, so tests and demos run on generated
// stand-ins that exercise the same shapes: BIO token files, concept-tagged
// relation TSVs, JSONL pair/document/QA files.

struct FixtureSizes {
  std::size_t train = 80;
  std::size_t dev = 20;
  std::size_t test = 60;
};

std::vector<NerExample> make_ner_examples(const std::string& dataset,
                                          const LabelScheme& scheme,
                                          Split split, std::size_t count,
                                          SeededRng& rng);

std::vector<ReExample> make_re_examples(const std::string& dataset,
                                        const LabelScheme& scheme, Split split,
                                        std::size_t count, SeededRng& rng);

std::vector<NliExample> make_nli_examples(const std::string& dataset,
                                          Split split, std::size_t count,
                                          SeededRng& rng);

std::vector<DocExample> make_doc_examples(const std::string& dataset,
                                          const LabelScheme& scheme,
                                          Split split, std::size_t count,
                                          SeededRng& rng);

std::vector<QaExample> make_qa_examples(const std::string& dataset,
                                        Split split, std::size_t count,
                                        SeededRng& rng);

// Default schemes for the supported corpora. Category and class inventories
// are conventions of the source corpora, supplied through manifests.
LabelScheme default_scheme(const std::string& dataset);

// The full fixture workspace: source files in their native formats plus one
// manifest per dataset, written under `dir`. `qa_train` controls the size of
// the two large QA sources; the rest use FixtureSizes defaults.
struct FixtureWorkspace {
  std::string dir;
  std::vector<std::string> manifest_paths;
};

FixtureWorkspace generate_fixture_workspace(const std::string& dir,
                                            std::uint64_t seed,
                                            std::size_t qa_train = 600);

// Datasets covered by generate_fixture_workspace, in generation order.
const std::vector<std::string>& fixture_datasets();

}  // namespace bioinstruct
