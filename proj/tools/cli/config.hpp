#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "edlab/catalog.hpp"
#include "edlab/constants.hpp"
#include "edlab/explorer.hpp"
#include "edlab/grid.hpp"
#include "edlab/potential.hpp"
#include "edlab/verify.hpp"

namespace edlab::cli {

/// Thrown for malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Evolution {
  double dt = 1e-3;
  std::size_t n_steps = 200;
  std::size_t snapshot_stride = 10;
  friend bool operator==(const Evolution&, const Evolution&) = default;
};

/// Command-specific knobs.
struct Params {
  double time = 0.0;                           ///< evaluation time of the state
  std::vector<double> times;                   ///< transport sample times
  double figure_time = 2.449489742783178;      ///< figures: Airy snapshot time (sqrt 6)
  std::vector<double> c_values{10.0, 100.0, 1000.0};
  int components = 1;                          ///< explore: N
  std::size_t budget = 10000;                  ///< explore: objective evaluations
  Lattice lattice{};
  int boxes = 5;                               ///< verify: random holography boxes
};

using StateSpec = std::variant<PacketSpec, SuperpositionSpec>;

struct RunConfig {
  std::string command;
  StateSpec state{PacketSpec{}};
  std::optional<Grid> grid;
  std::optional<PotentialSpec> potential;  ///< absent: the state's natural potential
  Evolution evolution;
  std::string tolerance_profile = "default";
  Tolerances tolerances;
  std::string output = "out";
  std::uint64_t seed = 0;
  std::optional<std::string> timestamp;
  PhysConstants constants;
  Params params;

  std::string state_name() const;
  PotentialSpec resolved_potential() const;
};

/// Equality of the canonical emitted form.
bool operator==(const RunConfig& a, const RunConfig& b);

inline constexpr const char* kCommands[] = {"density", "evolve", "verify", "transport", "figures", "explore", "limit"};

RunConfig parse_config(const nlohmann::json& j);
nlohmann::json emit_config(const RunConfig& c);

nlohmann::json packet_to_json(const PacketSpec& p);
PacketSpec packet_from_json(const nlohmann::json& j);

/// Applies `key.path=value`; the value is parsed as JSON when possible and
/// taken as a string otherwise.
void apply_override(nlohmann::json& j, const std::string& assignment);

}  // namespace edlab::cli
