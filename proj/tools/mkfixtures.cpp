// Generates the synthetic fixture workspace: source files in every supported
// format plus one manifest per dataset. Real corpora are license-restricted
// and never shipped; these stand-ins exercise the same shapes.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bioinstruct/fixtures.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate synthetic source corpora and manifests"};
  std::string out_dir;
  std::uint64_t seed = 0;
  std::size_t qa_train = 600;
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--seed", seed, "Generation seed")->required();
  app.add_option("--qa-train", qa_train,
                 "Train-split size of the two large QA sources");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto ws =
        bioinstruct::generate_fixture_workspace(out_dir, seed, qa_train);
    std::cerr << "wrote " << ws.manifest_paths.size() << " datasets under "
              << ws.dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
