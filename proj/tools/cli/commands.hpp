#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace edlab::cli {

struct RunResult {
  int exit_code = 0;  ///< 0 all checks pass, 1 a check failed
  std::vector<std::filesystem::path> files;
  nlohmann::json report;
};

/// Runs `cfg.command` and writes `<command>_<state>_<timestamp>.{csv,json}`
/// into `cfg.output`. Throws ConfigError or edlab::Error for invalid input.
RunResult run(const RunConfig& cfg, const std::string& timestamp);

/// UTC time as YYYYmmddTHHMMSSZ.
std::string utc_timestamp();

}  // namespace edlab::cli
