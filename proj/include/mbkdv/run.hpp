#pragma once

#include "mbkdv/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mbkdv {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;

  /// Accepts {"command", "params", "output_dir", "seed"}; anything else is rejected.
  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

const std::vector<std::string>& known_commands();
/// Parameter names accepted by a command; throws ConfigInvalid for an unknown command.
const std::vector<std::string>& command_params(const std::string& command);

/// Checks command, keys and numeric ranges without running anything.
void validate(const RunConfig& config);

/// Runs the command and returns its report. Throws mbkdv::Error.
Report execute(const RunConfig& config);

struct RunOutcome {
  Report report;
  int exit_code = 0;  ///< 0 success, 2 config, 3 numerical
  std::string message;
};

/// execute() plus error mapping; writes the report when output_dir is set.
RunOutcome run(const RunConfig& config);

}  // namespace mbkdv
