// Command-line driver: run experiments, emit presets, sweep the norm lemmas,
// and measure cross-solver convergence. Output root comes from the
// FPE_OUTPUT_ROOT environment variable (default: current directory).
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fpe/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string output_root() {
  const char* root = std::getenv("FPE_OUTPUT_ROOT");
  return root ? root : ".";
}

int report(const fpe::RunManifest& m) {
  for (const auto& c : m.checks) {
    std::printf("%-40s %s\n", c.name.c_str(), c.pass ? "PASS" : "FAIL");
  }
  if (!m.error.empty()) std::fprintf(stderr, "error: %s\n", m.error.c_str());
  std::printf("%s\n", m.all_pass() ? "ALL CHECKS PASSED" : "CHECKS FAILED");
  return m.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fokker-Planck solver with fixed-point and finite-volume paths"};
  app.require_subcommand(1);

  std::string config_path, preset_name;
  bool emit_config = false;
  int levels = 3;

  auto* cmd_run = app.add_subcommand("run", "execute a config file");
  cmd_run->add_option("config", config_path, "path to config")->required();

  auto* cmd_preset = app.add_subcommand("preset", "run or print a named scenario");
  cmd_preset->add_option("name", preset_name, "preset name")->required();
  cmd_preset->add_flag("--emit-config", emit_config,
                       "print the config instead of running it");

  auto* cmd_lemmas = app.add_subcommand("verify-lemmas", "randomized norm-lemma sweep");
  cmd_lemmas->add_option("config", config_path, "path to config")->required();

  auto* cmd_conv = app.add_subcommand("convergence", "cross-solver refinement study");
  cmd_conv->add_option("config", config_path, "path to config")->required();
  cmd_conv->add_option("--levels", levels, "number of refinement levels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      return report(fpe::run_experiment(fpe::parse_config(read_file(config_path)),
                                        output_root()));
    }
    if (cmd_preset->parsed()) {
      const fpe::RunConfig config = fpe::preset(preset_name);
      if (emit_config) {
        std::printf("%s", fpe::serialize_config(config).c_str());
        return 0;
      }
      return report(fpe::run_experiment(config, output_root()));
    }
    if (cmd_lemmas->parsed()) {
      return report(fpe::run_lemma_sweep(fpe::parse_config(read_file(config_path)),
                                         output_root()));
    }
    return report(fpe::run_convergence(fpe::parse_config(read_file(config_path)),
                                       output_root(), levels));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
