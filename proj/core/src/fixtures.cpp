#include "bioinstruct/fixtures.hpp"

#include <cctype>
#include <filesystem>

#include "bioinstruct/error.hpp"
#include "bioinstruct/ingest.hpp"
#include "bioinstruct/jsonl.hpp"

namespace bioinstruct {

namespace {

const std::vector<std::string> kVocab = {
    "patient",  "was",      "given",   "aspirin",  "insulin",  "the",
    "reported", "severe",   "chronic", "acute",    "pain",     "fever",
    "cough",    "lesion",   "tumor",   "biopsy",   "glucose",  "pressure",
    "elevated", "normal",   "levels",  "after",    "therapy",  "history",
    "presents", "with",     "denies",  "bilateral", "daily",   "admission",
    "discharge", "stable",  "mild",    "nausea",   "swelling", "rash"};

const std::vector<std::string> kConcepts = {"problem", "test", "treatment"};

std::string pick(const std::vector<std::string>& pool, SeededRng& rng) {
  return pool[static_cast<std::size_t>(rng.next_below(pool.size()))];
}

std::string sentence(SeededRng& rng, std::size_t min_words = 4,
                     std::size_t max_words = 10) {
  const std::size_t n =
      min_words + static_cast<std::size_t>(
                      rng.next_below(max_words - min_words + 1));
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    out += pick(kVocab, rng);
  }
  return out;
}

std::string seq_id(const std::string& dataset, Split split, std::size_t n) {
  return dataset + "-" + std::string(to_string(split)) + "-" +
         std::to_string(n);
}

}  // namespace

std::vector<NerExample> make_ner_examples(const std::string& dataset,
                                          const LabelScheme& scheme,
                                          Split split, std::size_t count,
                                          SeededRng& rng) {
  if (!scheme.bio) throw ValidationError("NER fixtures need a BIO scheme");
  std::vector<NerExample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    NerExample e;
    e.id = seq_id(dataset, split, k);
    e.source_dataset = dataset;
    e.split = split;
    const std::size_t len =
        3 + static_cast<std::size_t>(rng.next_below(10));  // 3..12 tokens
    std::string inside_type;
    bool inside = false;
    for (std::size_t i = 0; i < len; ++i) {
      e.tokens.push_back(pick(kVocab, rng));
      const std::uint64_t draw = rng.next_below(100);
      if (inside && draw < 40) {
        e.labels.push_back(inside_type.empty() ? "I" : "I-" + inside_type);
        continue;
      }
      if (draw < 25) {
        inside = true;
        inside_type = scheme.categories.empty()
                          ? ""
                          : scheme.categories[static_cast<std::size_t>(
                                rng.next_below(scheme.categories.size()))];
        e.labels.push_back(inside_type.empty() ? "B" : "B-" + inside_type);
      } else {
        inside = false;
        e.labels.push_back("O");
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ReExample> make_re_examples(const std::string& dataset,
                                        const LabelScheme& scheme, Split split,
                                        std::size_t count, SeededRng& rng) {
  std::vector<ReExample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    ReExample e;
    e.id = seq_id(dataset, split, k);
    e.source_dataset = dataset;
    e.split = split;
    // Sentence with two concept tags separated by filler words.
    e.text = "the @" + pick(kConcepts, rng) + "$ " + sentence(rng, 2, 5) +
             " @" + pick(kConcepts, rng) + "$";
    e.label = pick(scheme.labels, rng);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<NliExample> make_nli_examples(const std::string& dataset,
                                          Split split, std::size_t count,
                                          SeededRng& rng) {
  static const std::vector<std::string> kLabels = {kEntailment, kContradiction,
                                                   kNeutral};
  std::vector<NliExample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    NliExample e;
    e.id = seq_id(dataset, split, k);
    e.source_dataset = dataset;
    e.split = split;
    e.premise = sentence(rng);
    e.hypothesis = sentence(rng);
    e.label = pick(kLabels, rng);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<DocExample> make_doc_examples(const std::string& dataset,
                                          const LabelScheme& scheme,
                                          Split split, std::size_t count,
                                          SeededRng& rng) {
  std::vector<DocExample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    DocExample e;
    e.id = seq_id(dataset, split, k);
    e.source_dataset = dataset;
    e.split = split;
    e.text = sentence(rng, 8, 20) + ". " + sentence(rng, 6, 14) + ".";
    const std::size_t n_labels =
        1 + static_cast<std::size_t>(rng.next_below(3));
    while (e.labels.size() < n_labels) {
      e.labels.insert(pick(scheme.labels, rng));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<QaExample> make_qa_examples(const std::string& dataset,
                                        Split split, std::size_t count,
                                        SeededRng& rng) {
  static const std::vector<std::string> kContexts = {
      "If you are a doctor, please answer the medical questions based on the "
      "patient's description.",
      "Answer the following question truthfully and concisely.",
      "You are a knowledgeable medical assistant. Respond to the question."};
  std::vector<QaExample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    QaExample e;
    e.id = seq_id(dataset, split, k);
    e.source_dataset = dataset;
    e.split = split;
    e.question = "What should be done about " + sentence(rng, 3, 6) + "?";
    if (rng.next_below(2) == 0) e.context = pick(kContexts, rng);
    e.answer = sentence(rng, 6, 16) + ".";
    out.push_back(std::move(e));
  }
  return out;
}

LabelScheme default_scheme(const std::string& dataset) {
  if (dataset == "ncbi-disease" || dataset == "bc5cdr-disease" ||
      dataset == "bc5cdr-chem" || dataset == "bc2gm" || dataset == "jnlpba") {
    return LabelScheme::make_bio(dataset, {});
  }
  if (dataset == "i2b2-2012") {
    return LabelScheme::make_bio(
        dataset, {"PROBLEM", "TEST", "TREATMENT", "CLINICAL_DEPT",
                  "EVIDENTIAL", "OCCURRENCE"});
  }
  if (dataset == "i2b2-2010") {
    return LabelScheme::make_flat(
        dataset, TaskKind::Re,
        {"TrIP", "TrWP", "TrCP", "TrAP", "TrNAP", "TeRP", "TeCP", "PIP"});
  }
  if (dataset == "gad") {
    return LabelScheme::make_flat(dataset, TaskKind::Re, {"0", "1"});
  }
  if (dataset == "mednli") {
    return LabelScheme::make_flat(dataset, TaskKind::Nli,
                                  {kEntailment, kContradiction, kNeutral});
  }
  if (dataset == "hoc") {
    return LabelScheme::make_flat(
        dataset, TaskKind::DocCls,
        {"Sustaining proliferative signaling", "Evading growth suppressors",
         "Resisting cell death", "Enabling replicative immortality",
         "Inducing angiogenesis", "Activating invasion and metastasis",
         "Genomic instability and mutation", "Tumor promoting inflammation",
         "Cellular energetics", "Avoiding immune destruction"});
  }
  throw DataError("no default scheme for dataset '" + dataset + "'");
}

const std::vector<std::string>& fixture_datasets() {
  static const std::vector<std::string> kDatasets = {
      "ncbi-disease", "bc5cdr-disease", "bc5cdr-chem",  "bc2gm",
      "jnlpba",       "i2b2-2012",      "i2b2-2010",    "gad",
      "mednli",       "hoc",            "chatdoctor",   "pmc-llama",
      "pubmedqa",     "medqa",          "umls",         "umls-relations"};
  return kDatasets;
}

namespace {

struct SplitSpec {
  Split split;
  std::size_t count;
};

std::string write_manifest(const std::string& dir, const std::string& name,
                           TaskKind kind, const std::string& format,
                           const LabelScheme* scheme,
                           const std::string& extension) {
  DatasetManifest m;
  m.name = name;
  m.task_kind = kind;
  m.format = format;
  if (scheme != nullptr) m.scheme = *scheme;
  m.split_paths[Split::Train] = name + ".train." + extension;
  m.split_paths[Split::Dev] = name + ".dev." + extension;
  m.split_paths[Split::Test] = name + ".test." + extension;
  const std::string path = dir + "/" + name + ".manifest.json";
  write_file(path, m.serialize() + "\n");
  return path;
}

std::string qa_jsonl(const std::vector<QaExample>& examples) {
  std::string out;
  for (const auto& e : examples) {
    json j;
    if (e.context) {
      j["instruction"] = *e.context;
      j["input"] = e.question;
    } else {
      j["instruction"] = e.question;
      j["input"] = "";
    }
    j["output"] = e.answer;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string nli_jsonl(const std::vector<NliExample>& examples) {
  std::string out;
  for (const auto& e : examples) {
    json j;
    j["sentence1"] = e.premise;
    j["sentence2"] = e.hypothesis;
    // Native corpus files carry lowercase labels; ingestion case-folds.
    std::string label = e.label;
    for (auto& c : label) c = static_cast<char>(std::tolower(c));
    j["gold_label"] = label;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string doc_jsonl(const std::vector<DocExample>& examples) {
  std::string out;
  for (const auto& e : examples) {
    json j;
    j["text"] = e.text;
    j["labels"] = e.labels;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string re_tsv(const std::vector<ReExample>& examples) {
  std::string out;
  for (const auto& e : examples) {
    out += e.id;
    out += '\t';
    out += e.text;
    out += '\t';
    out += e.label;
    out += '\n';
  }
  return out;
}

}  // namespace

FixtureWorkspace generate_fixture_workspace(const std::string& dir,
                                            std::uint64_t seed,
                                            std::size_t qa_train) {
  std::filesystem::create_directories(dir);
  FixtureWorkspace ws;
  ws.dir = dir;
  const SeededRng base(seed);
  const FixtureSizes sizes;

  const auto splits = [&](const std::string& dataset) {
    const bool large = dataset == "chatdoctor" || dataset == "pmc-llama";
    return std::vector<SplitSpec>{
        {Split::Train, large ? qa_train : sizes.train},
        {Split::Dev, sizes.dev},
        {Split::Test, sizes.test}};
  };

  for (const auto& dataset : fixture_datasets()) {
    SeededRng rng = base.derive(dataset);
    const bool is_qa = dataset == "chatdoctor" || dataset == "pmc-llama" ||
                       dataset == "pubmedqa" || dataset == "medqa" ||
                       dataset == "umls" || dataset == "umls-relations";
    if (is_qa) {
      for (const auto& s : splits(dataset)) {
        write_file(dir + "/" + dataset + "." +
                       std::string(to_string(s.split)) + ".jsonl",
                   qa_jsonl(make_qa_examples(dataset, s.split, s.count, rng)));
      }
      ws.manifest_paths.push_back(write_manifest(
          dir, dataset, TaskKind::Qa, "qa_jsonl", nullptr, "jsonl"));
      continue;
    }
    const LabelScheme scheme = default_scheme(dataset);
    switch (scheme.task_kind) {
      case TaskKind::Ner:
        for (const auto& s : splits(dataset)) {
          write_file(dir + "/" + dataset + "." +
                         std::string(to_string(s.split)) + ".conll",
                     serialize_conll(make_ner_examples(dataset, scheme,
                                                       s.split, s.count, rng)));
        }
        ws.manifest_paths.push_back(write_manifest(
            dir, dataset, TaskKind::Ner, "conll", &scheme, "conll"));
        break;
      case TaskKind::Re:
        for (const auto& s : splits(dataset)) {
          write_file(dir + "/" + dataset + "." +
                         std::string(to_string(s.split)) + ".tsv",
                     re_tsv(make_re_examples(dataset, scheme, s.split, s.count,
                                             rng)));
        }
        ws.manifest_paths.push_back(write_manifest(
            dir, dataset, TaskKind::Re, "re_tsv", &scheme, "tsv"));
        break;
      case TaskKind::Nli:
        for (const auto& s : splits(dataset)) {
          write_file(dir + "/" + dataset + "." +
                         std::string(to_string(s.split)) + ".jsonl",
                     nli_jsonl(make_nli_examples(dataset, s.split, s.count,
                                                 rng)));
        }
        ws.manifest_paths.push_back(write_manifest(
            dir, dataset, TaskKind::Nli, "nli_jsonl", &scheme, "jsonl"));
        break;
      case TaskKind::DocCls:
        for (const auto& s : splits(dataset)) {
          write_file(dir + "/" + dataset + "." +
                         std::string(to_string(s.split)) + ".jsonl",
                     doc_jsonl(make_doc_examples(dataset, scheme, s.split,
                                                 s.count, rng)));
        }
        ws.manifest_paths.push_back(write_manifest(
            dir, dataset, TaskKind::DocCls, "doc_jsonl", &scheme, "jsonl"));
        break;
      case TaskKind::Qa:
        break;  // handled above
    }
  }
  return ws;
}

}  // namespace bioinstruct
