#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "edlab/io.hpp"

int main(int argc, char** argv) {
  using namespace edlab::cli;
  CLI::App app{"edlab: energy densities of quantum wave packets"};
  std::string command, config_path, out, profile, timestamp;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  bool print_config = false;
  app.add_option("command", command, "density | evolve | verify | transport | figures | explore | limit");
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--set", sets, "override a config entry, e.g. --set state.b=0.5");
  app.add_option("--out", out, "output directory");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--tolerance-profile", profile, "tolerance table")->check(CLI::IsMember({"default", "strict"}));
  app.add_option("--timestamp", timestamp, "timestamp used in output names (default: current UTC time)");
  app.add_flag("--print-config", print_config, "print the resolved configuration and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::json j = nlohmann::json::object();
    if (!config_path.empty()) {
      j = nlohmann::json::parse(edlab::io::read_text(config_path), nullptr, false);
      if (j.is_discarded()) throw ConfigError("config: '" + config_path + "' is not valid JSON");
    }
    if (!command.empty()) j["command"] = command;
    for (const auto& s : sets) apply_override(j, s);
    if (!out.empty()) j["output"] = out;
    if (seed) j["seed"] = *seed;
    if (!profile.empty()) j["tolerance_profile"] = profile;
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    const RunConfig cfg = parse_config(j);
    if (print_config) {
      std::cout << emit_config(cfg).dump(2) << '\n';
      return 0;
    }
    const RunResult res = run(cfg, cfg.timestamp ? *cfg.timestamp : utc_timestamp());
    for (const auto& f : res.files) std::cout << f.string() << '\n';
    if (res.report.contains("checks"))
      for (const auto& c : res.report["checks"])
        std::cout << (c["pass"].get<bool>() ? "pass " : "FAIL ") << c["name"].get<std::string>() << '\n';
    std::cout << (res.exit_code == 0 ? "all checks passed" : "check failure") << '\n';
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "edlab: " << e.what() << '\n';
    return 2;
  }
}
