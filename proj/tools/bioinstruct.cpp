// Command-line front end: convert sources to instruction records, assemble
// mixes, evaluate generations, and render reports.

#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bioinstruct/backend.hpp"
#include "bioinstruct/error.hpp"
#include "bioinstruct/fixtures.hpp"
#include "bioinstruct/ingest.hpp"
#include "bioinstruct/jsonl.hpp"
#include "bioinstruct/manifest.hpp"
#include "bioinstruct/mix.hpp"
#include "bioinstruct/report.hpp"
#include "bioinstruct/runner.hpp"
#include "bioinstruct/templates.hpp"
#include "bioinstruct/validate.hpp"

namespace {

using namespace bioinstruct;

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kBackendError = 3;

std::uint64_t parse_scale(const std::string& scale) {
  if (scale.empty() || scale == "1") return 1;
  if (scale.rfind("1/", 0) != 0) {
    throw ValidationError("--scale must look like 1/N");
  }
  const std::string denom = scale.substr(2);
  if (denom.empty() ||
      denom.find_first_not_of("0123456789") != std::string::npos) {
    throw ValidationError("--scale must look like 1/N");
  }
  const auto n = std::stoull(denom);
  if (n == 0) throw ValidationError("--scale denominator must be positive");
  return n;
}

int cmd_convert(const std::string& manifest_path, const std::string& split_name,
                std::uint64_t seed, const std::string& out,
                const std::string& templates_dir) {
  const DatasetManifest manifest = DatasetManifest::load(manifest_path);
  const Split split = split_from_string(split_name);

  ParseDiagnostics diag;
  const auto examples = ingest_split(manifest, split, &diag);
  for (const auto& w : diag.warnings) std::cerr << "warning: " << w << "\n";

  bool valid = true;
  for (const auto& e : examples) {
    const auto result = validate_example(e, manifest.scheme_ptr());
    for (const auto& v : result.violations) {
      std::cerr << "invalid example " << id_of(e) << ": " << v << "\n";
      valid = false;
    }
  }
  if (!valid) throw DataError("validation failed for " + manifest.name);

  const TemplatePool pool =
      TemplatePool::load(templates_dir + "/" + manifest.name + ".json");
  const auto records =
      convert_examples(examples, pool, manifest.scheme_ptr(), seed);
  const MixStats stats = write_records_jsonl(records, out);
  std::cout << stats.total << "\n";
  std::cerr << "wrote " << stats.total << " records to " << out
            << " (sha256 " << stats.digest << ")\n";
  return kOk;
}

int cmd_mix(const std::string& spec_path, const std::string& out_dir,
            const std::string& scale, const std::string& sources_dir) {
  MixSpec spec = MixSpec::load(spec_path);
  const std::uint64_t denominator = parse_scale(scale);
  if (denominator != 1) spec = spec.scaled(denominator);

  std::map<std::string, std::vector<InstructionRecord>> sources;
  for (const auto& entry : spec.entries) {
    const std::string path = sources_dir + "/" + entry.source + ".jsonl";
    if (!std::filesystem::exists(path)) {
      throw DataError("missing source file: " + path);
    }
    sources[entry.source] = read_records_jsonl(path);
  }

  const auto records = build_mix(spec, sources);
  std::filesystem::create_directories(out_dir);
  const MixStats stats =
      write_records_jsonl(records, out_dir + "/" + spec.name + ".jsonl");
  write_file(out_dir + "/" + spec.name + ".stats.json",
             stats.serialize() + "\n");
  write_file(out_dir + "/" + spec.name + ".recipe.json",
             emit_training_recipe(stats, spec.name) + "\n");
  std::cout << stats.serialize() << "\n";
  return kOk;
}

struct EvalFlags {
  std::string records_path;
  std::string backend;
  std::string mock_mode = "perfect";
  double corrupt_p = 0.3;
  std::uint64_t mock_seed = 0;
  bool mock_seed_set = false;
  std::string predictions;
  std::string endpoint;
  std::string auth_env = "BIOINSTRUCT_API_TOKEN";
  std::uint64_t max_retries = 3;
  std::uint64_t backoff_ms = 250;
  bool chat = false;
  std::size_t parallel = 1;
  std::vector<std::string> manifests;
  std::string out_dir = ".";
  bool strict_chunks = false;
  bool verbose = false;
  std::string system_name;
  std::string prompt_style_path;
};

int cmd_eval(const EvalFlags& flags) {
  const auto records = read_records_jsonl(flags.records_path);

  std::map<std::string, LabelScheme> schemes;
  for (const auto& path : flags.manifests) {
    const DatasetManifest m = DatasetManifest::load(path);
    if (m.scheme) schemes.emplace(m.name, *m.scheme);
  }

  std::unique_ptr<Backend> backend;
  std::vector<std::string> warnings;
  if (flags.backend == "mock") {
    MockMode mode;
    if (flags.mock_mode == "perfect") {
      mode = MockMode::Perfect;
    } else if (flags.mock_mode == "corrupt") {
      mode = MockMode::Corrupt;
    } else if (flags.mock_mode == "refuse") {
      mode = MockMode::Refuse;
    } else {
      throw ValidationError("unknown --mock-mode '" + flags.mock_mode + "'");
    }
    if (mode == MockMode::Corrupt && !flags.mock_seed_set) {
      throw ValidationError("--mock-seed is required with --mock-mode corrupt");
    }
    backend = std::make_unique<MockBackend>(mode, flags.corrupt_p,
                                            flags.mock_seed);
  } else if (flags.backend == "file") {
    if (flags.predictions.empty()) {
      throw ValidationError("--predictions is required with --backend file");
    }
    backend =
        std::make_unique<FileBackend>(flags.predictions, records, &warnings);
  } else if (flags.backend == "http") {
    if (flags.endpoint.empty()) {
      throw ValidationError("--endpoint is required with --backend http");
    }
    HttpConfig config;
    config.endpoint = flags.endpoint;
    config.auth_env = flags.auth_env;
    config.max_retries = flags.max_retries;
    config.backoff_ms = flags.backoff_ms;
    config.chat_style = flags.chat;
    backend = std::make_unique<HttpBackend>(config);
  } else {
    throw ValidationError("unknown --backend '" + flags.backend + "'");
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

  RunOptions options;
  options.parallelism = flags.parallel;
  options.chunk_mode =
      flags.strict_chunks ? ChunkMode::Strict : ChunkMode::Lenient;
  options.verbose = flags.verbose;
  options.system_name = flags.system_name;
  if (!flags.prompt_style_path.empty()) {
    options.prompt_style = PromptStyle::load(flags.prompt_style_path);
  }

  const RunResult result = run_eval(records, schemes, *backend, options);

  std::filesystem::create_directories(flags.out_dir);
  write_file(flags.out_dir + "/report.json",
             result.report.to_json_string() + "\n");
  write_file(flags.out_dir + "/report.md", result.report.to_markdown());
  write_file(flags.out_dir + "/records.log.jsonl",
             result.log_jsonl(flags.verbose));
  std::cerr << "evaluated " << records.size() << " records: "
            << result.correct << " correct, " << result.wrong << " wrong, "
            << result.failed << " failed\n";
  if (result.failed > 0) {
    std::cerr << "error: " << result.failed << " backend failure(s)\n";
    return kBackendError;
  }
  return kOk;
}

int cmd_stats(const std::string& in) {
  const auto records = read_records_jsonl(in);
  std::cout << compute_stats(records).serialize() << "\n";
  return kOk;
}

int cmd_report(const std::string& in, const std::string& format) {
  const EvalReport report = EvalReport::from_json_string(read_file(in));
  if (format == "md") {
    std::cout << report.to_markdown();
  } else {
    std::cout << report.to_json_string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instruction-corpus toolkit for biomedical NLP datasets"};
  app.require_subcommand(1);

  // convert
  auto* convert = app.add_subcommand(
      "convert", "Convert one source split into instruction records");
  std::string manifest_path, split_name, convert_out;
  std::string templates_dir = "data/templates";
  std::uint64_t convert_seed = 0;
  convert->add_option("--manifest", manifest_path, "Dataset manifest JSON")
      ->required();
  convert->add_option("--split", split_name, "train | dev | test")->required();
  convert->add_option("--seed", convert_seed, "Template-choice seed")
      ->required();
  convert->add_option("--out", convert_out, "Output JSONL path")->required();
  convert->add_option("--templates", templates_dir,
                      "Template library directory");

  // mix
  auto* mix = app.add_subcommand("mix", "Sample, concatenate and shuffle");
  std::string spec_path, mix_out, scale, sources_dir = ".";
  mix->add_option("--spec", spec_path, "Mix spec JSON")->required();
  mix->add_option("--out", mix_out, "Output directory")->required();
  mix->add_option("--scale", scale, "Scale quotas by 1/N (e.g. 1/100)");
  mix->add_option("--sources", sources_dir,
                  "Directory with <source>.jsonl record files");

  // eval
  auto* eval = app.add_subcommand("eval", "Zero-shot evaluation");
  EvalFlags flags;
  eval->add_option("--records", flags.records_path, "Eval records JSONL")
      ->required();
  eval->add_option("--backend", flags.backend, "mock | file | http")
      ->required()
      ->check(CLI::IsMember({"mock", "file", "http"}));
  eval->add_option("--mock-mode", flags.mock_mode,
                   "perfect | corrupt | refuse")
      ->check(CLI::IsMember({"perfect", "corrupt", "refuse"}));
  eval->add_option("--corrupt-p", flags.corrupt_p,
                   "Corruption probability for --mock-mode corrupt");
  auto* seed_opt =
      eval->add_option("--mock-seed", flags.mock_seed, "Mock corruption seed");
  eval->add_option("--predictions", flags.predictions,
                   "JSONL of {record_id, text} for --backend file");
  eval->add_option("--endpoint", flags.endpoint,
                   "Completion endpoint URL for --backend http");
  eval->add_option("--auth-env", flags.auth_env,
                   "Env var holding the bearer token");
  eval->add_option("--max-retries", flags.max_retries,
                   "Total HTTP attempts per record");
  eval->add_option("--backoff-ms", flags.backoff_ms,
                   "Initial retry backoff (doubles per retry)");
  eval->add_flag("--chat", flags.chat, "Use the chat-style request adapter");
  eval->add_option("--parallel", flags.parallel, "Requests in flight");
  eval->add_option("--manifest", flags.manifests,
                   "Dataset manifest(s) providing label schemes");
  eval->add_option("--out", flags.out_dir, "Report output directory");
  eval->add_flag("--strict", flags.strict_chunks,
                 "Strict BIO chunking for entity F1");
  eval->add_flag("--verbose", flags.verbose,
                 "Include parser diagnostics in the per-record log");
  eval->add_option("--system", flags.system_name,
                   "System name for the report column");
  eval->add_option("--prompt-style", flags.prompt_style_path,
                   "JSON file overriding the prompt preambles");

  // stats
  auto* stats = app.add_subcommand("stats", "Print corpus statistics");
  std::string stats_in;
  stats->add_option("--in", stats_in, "Records JSONL")->required();

  // report
  auto* report = app.add_subcommand("report", "Re-render a stored report");
  std::string report_in, report_format = "md";
  report->add_option("--in", report_in, "Report JSON")->required();
  report->add_option("--format", report_format, "md | json")
      ->check(CLI::IsMember({"md", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }
  flags.mock_seed_set = seed_opt->count() > 0;

  try {
    if (convert->parsed()) {
      return cmd_convert(manifest_path, split_name, convert_seed, convert_out,
                         templates_dir);
    }
    if (mix->parsed()) {
      return cmd_mix(spec_path, mix_out, scale, sources_dir);
    }
    if (eval->parsed()) {
      return cmd_eval(flags);
    }
    if (stats->parsed()) {
      return cmd_stats(stats_in);
    }
    if (report->parsed()) {
      return cmd_report(report_in, report_format);
    }
  } catch (const BackendError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBackendError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}
