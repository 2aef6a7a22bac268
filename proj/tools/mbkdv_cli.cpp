#include "mbkdv/errors.hpp"
#include "mbkdv/run.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

namespace {

constexpr const char* kOutputEnv = "MBKDV_OUTPUT_DIR";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majda-Biello resonance, solver and ill-posedness probes"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path, output_dir;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON config {command, params, output_dir, seed}");
  app.add_option("-o,--output-dir", output_dir, "directory for summary.json, <table>.csv and <table>.dat");
  app.add_option("--seed", seed, "seed for randomized initial data");

  std::map<std::string, std::map<std::string, std::string>> values;
  const std::map<std::string, std::string> about{
      {"roots", "resonance roots c1, c2, d1, d2 and the cutoff L_alpha"},
      {"diophantine", "continued fraction, type class and theta subsequence of a root"},
      {"resonance-scan", "integer resonance gaps over a range of N"},
      {"simulate", "pseudospectral integration with conserved-quantity monitors"},
      {"picard", "second and third Picard iterate norms for spike data"},
      {"bilinear-scan", "bilinear ratio slopes and the threshold s*"},
      {"omega-count", "measure of the resonant set in dyadic shells"},
  };
  for (const auto& cmd : mbkdv::known_commands()) {
    const auto desc = about.find(cmd);
    auto* sub = app.add_subcommand(cmd, desc == about.end() ? std::string() : desc->second);
    for (const auto& key : mbkdv::command_params(cmd)) {
      std::string names = "--" + key;
      if (key.find('_') != std::string::npos) {
        std::string dashed = key;
        std::replace(dashed.begin(), dashed.end(), '_', '-');
        names += ",--" + dashed;
      }
      sub->add_option(names, values[cmd][key]);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  mbkdv::RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw mbkdv::Error(mbkdv::ErrorCode::ConfigInvalid, "cannot read " + config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw mbkdv::Error(mbkdv::ErrorCode::ConfigInvalid, std::string("config: ") + e.what());
      }
      config = mbkdv::RunConfig::from_json(j);
    }
    const auto subs = app.get_subcommands();
    if (!subs.empty()) {
      const std::string cmd = subs.front()->get_name();
      if (!config_path.empty() && cmd != config.command)
        throw mbkdv::Error(mbkdv::ErrorCode::ConfigInvalid, "command: config says '" + config.command + "'");
      config.command = cmd;
      for (const auto& key : mbkdv::command_params(cmd))
        if (subs.front()->count("--" + key) > 0) config.params[key] = values[cmd][key];
    }
    if (config.command.empty()) throw mbkdv::Error(mbkdv::ErrorCode::ConfigInvalid, "command: required");
    if (app.count("--seed") > 0) config.seed = seed;
    if (!output_dir.empty()) config.output_dir = output_dir;
    if (const char* env = std::getenv(kOutputEnv); env && *env) config.output_dir = env;
    if (config.output_dir.empty()) config.output_dir = "mbkdv_output";
  } catch (const mbkdv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const auto outcome = mbkdv::run(config);
  if (outcome.exit_code != 0) {
    std::cerr << "error: " << outcome.message << '\n';
    return outcome.exit_code;
  }
  std::cout << outcome.report.summary.dump(2) << '\n';
  std::cerr << "report written to " << config.output_dir.string() << '\n';
  return 0;
}
