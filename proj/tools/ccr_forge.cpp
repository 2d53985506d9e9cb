#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ccrforge/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Twisted crossed products, C*-multipliers and Weyl relations at desk scale", "ccr-forge"};
  std::string command;
  std::string spec_path;
  ccrforge::CommandOptions opt;
  app.add_option("command", command, "check | build | norm | roundtrip | weyl | spacetime")
      ->required()
      ->check(CLI::IsMember({"check", "build", "norm", "roundtrip", "weyl", "spacetime"}));
  app.add_option("spec", spec_path, "problem specification (JSON)")->required();
  app.add_option("--tol", opt.tol, "residual tolerance")->capture_default_str();
  app.add_option("--element", opt.element, "named element for norm");
  app.add_option("--out", opt.out, "output path for build");
  app.add_option("--word", opt.words, "Weyl word, letters separated by ';', components by ','")->take_all();
  app.add_flag("--json", opt.json, "machine-readable output");
  CLI11_PARSE(app, argc, argv);

  ccrforge::CommandResult result;
  try {
    const auto spec = ccrforge::load_spec(spec_path);
    result = ccrforge::run_command(command, spec, opt);
  } catch (const ccrforge::Error& e) {
    result.exit_code = ccrforge::kExitError;
    result.document = {{"command", command},
                       {"pass", false},
                       {"error", {{"kind", std::string(ccrforge::to_string(e.kind()))}, {"message", e.what()}}}};
    result.text = std::string("error: ") + e.what() + "\n";
  }
  if (opt.json) {
    std::cout << result.document.dump(2) << "\n";
  } else {
    (result.exit_code == ccrforge::kExitError ? std::cerr : std::cout) << result.text;
  }
  return result.exit_code;
}
