#include "bioinstruct/manifest.hpp"

#include <filesystem>

#include "bioinstruct/error.hpp"
#include "bioinstruct/jsonl.hpp"

namespace bioinstruct {

namespace {

const char* const kFormats[] = {"conll", "re_tsv", "nli_jsonl", "doc_jsonl",
                                "qa_jsonl"};

}  // namespace

std::string DatasetManifest::resolve_path(Split split) const {
  const auto it = split_paths.find(split);
  if (it == split_paths.end()) {
    throw DataError("manifest '" + name + "' has no " +
                    std::string(to_string(split)) + " split");
  }
  std::filesystem::path p(it->second);
  if (p.is_absolute() || base_dir_.empty()) return p.string();
  return (std::filesystem::path(base_dir_) / p).string();
}

DatasetManifest DatasetManifest::load(const std::string& path) {
  return parse(read_file(path),
               std::filesystem::path(path).parent_path().string());
}

DatasetManifest DatasetManifest::parse(const std::string& text,
                                       const std::string& base_dir) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("manifest is not a JSON object");
  }
  DatasetManifest m;
  m.base_dir_ = base_dir;
  try {
    m.name = j.at("name").get<std::string>();
    m.task_kind = task_kind_from_string(j.at("task_kind").get<std::string>());
    m.format = j.at("format").get<std::string>();

    bool known = false;
    for (const char* f : kFormats) known |= (m.format == f);
    if (!known) throw ParseError("unknown source format '" + m.format + "'");

    if (j.contains("scheme")) {
      const json& s = j["scheme"];
      const bool bio = s.value("bio", false);
      if (bio) {
        m.scheme = LabelScheme::make_bio(
            m.name, s.value("categories", std::vector<std::string>{}));
      } else {
        m.scheme = LabelScheme::make_flat(
            m.name, m.task_kind, s.at("labels").get<std::vector<std::string>>());
      }
    } else if (m.task_kind != TaskKind::Qa) {
      throw ParseError("manifest '" + m.name +
                       "' needs a scheme for non-QA tasks");
    }

    for (const auto& [key, value] : j.at("splits").items()) {
      m.split_paths[split_from_string(key)] = value.get<std::string>();
    }

    if (j.contains("fields")) {
      const json& f = j["fields"];
      m.nli_fields.premise = f.value("premise", m.nli_fields.premise);
      m.nli_fields.hypothesis = f.value("hypothesis", m.nli_fields.hypothesis);
      m.nli_fields.label = f.value("label", m.nli_fields.label);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad manifest: ") + e.what());
  }
  return m;
}

std::string DatasetManifest::serialize() const {
  json j;
  j["name"] = name;
  j["task_kind"] = std::string(to_string(task_kind));
  j["format"] = format;
  if (scheme) {
    json s;
    s["bio"] = scheme->bio;
    if (scheme->bio) {
      s["categories"] = scheme->categories;
    } else {
      s["labels"] = scheme->labels;
    }
    j["scheme"] = std::move(s);
  }
  json splits;
  for (const auto& [split, path] : split_paths) {
    splits[std::string(to_string(split))] = path;
  }
  j["splits"] = std::move(splits);
  return j.dump(2);
}

}  // namespace bioinstruct
