#include "config.hpp"

#include <algorithm>
#include <initializer_list>

#include "edlab/io.hpp"

namespace edlab::cli {
namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

json ket_to_json(const std::array<cplx, 2>& k) {
  return json::array({json::array({k[0].real(), k[0].imag()}), json::array({k[1].real(), k[1].imag()})});
}

std::array<cplx, 2> ket_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("spin_ket: expected two entries");
  std::array<cplx, 2> k;
  for (std::size_t i = 0; i < 2; ++i) {
    const json& e = j[i];
    if (e.is_number()) k[i] = e.get<double>();
    else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
      k[i] = cplx(e[0].get<double>(), e[1].get<double>());
    else
      throw ConfigError("spin_ket: entries must be numbers or [re, im]");
  }
  return k;
}

json potential_to_json(const PotentialSpec& p) {
  json j;
  if (p.is_none()) j["kind"] = "none";
  else if (const auto* h = std::get_if<HarmonicPotential>(&p.kind)) j = {{"kind", "harmonic"}, {"omega", h->omega}};
  else if (const auto* m = p.magnetic()) j = {{"kind", "magnetic"}, {"B", m->B}};
  else throw ConfigError("potential: tabulated potentials cannot be expressed in a config");
  if (p.modulation)
    j["modulation"] = {{"amplitude", p.modulation->amplitude}, {"omega", p.modulation->omega}, {"phase", p.modulation->phase}};
  return j;
}

PotentialSpec potential_from_json(const json& j) {
  check_keys(j, {"kind", "omega", "B", "modulation"}, "potential");
  const std::string kind = get<std::string>(j, "kind", "none");
  PotentialSpec p;
  if (kind == "none") {
    check_keys(j, {"kind", "modulation"}, "potential(none)");
  } else if (kind == "harmonic") {
    check_keys(j, {"kind", "omega", "modulation"}, "potential(harmonic)");
    p = PotentialSpec::harmonic(get(j, "omega", 1.0));
  } else if (kind == "magnetic") {
    check_keys(j, {"kind", "B", "modulation"}, "potential(magnetic)");
    p = PotentialSpec::magnetic(get(j, "B", 1.0));
  } else {
    throw ConfigError("potential: unknown kind '" + kind + "'");
  }
  if (j.contains("modulation")) {
    const json& m = j.at("modulation");
    check_keys(m, {"amplitude", "omega", "phase"}, "potential.modulation");
    p.modulation = Modulation{get(m, "amplitude", 0.0), get(m, "omega", 1.0), get(m, "phase", 0.0)};
  }
  return p;
}

json lattice_to_json(const Lattice& l) { return to_json(l); }

Lattice lattice_from_json(const json& j) {
  check_keys(j, {"x_lo", "x_hi", "nx", "t_lo", "t_hi", "nt"}, "params.lattice");
  Lattice l;
  l.x_lo = get(j, "x_lo", l.x_lo);
  l.x_hi = get(j, "x_hi", l.x_hi);
  l.nx = get(j, "nx", l.nx);
  l.t_lo = get(j, "t_lo", l.t_lo);
  l.t_hi = get(j, "t_hi", l.t_hi);
  l.nt = get(j, "nt", l.nt);
  return l;
}

json params_to_json(const Params& p) {
  return {{"time", p.time},         {"times", p.times},         {"figure_time", p.figure_time},
          {"c_values", p.c_values}, {"components", p.components}, {"budget", p.budget},
          {"lattice", lattice_to_json(p.lattice)}, {"boxes", p.boxes}};
}

Params params_from_json(const json& j) {
  check_keys(j, {"time", "times", "figure_time", "c_values", "components", "budget", "lattice", "boxes"}, "params");
  Params p;
  p.time = get(j, "time", p.time);
  p.times = get(j, "times", p.times);
  p.figure_time = get(j, "figure_time", p.figure_time);
  p.c_values = get(j, "c_values", p.c_values);
  p.components = get(j, "components", p.components);
  p.budget = get(j, "budget", p.budget);
  if (j.contains("lattice")) p.lattice = lattice_from_json(j.at("lattice"));
  p.boxes = get(j, "boxes", p.boxes);
  return p;
}

json constants_to_json(const PhysConstants& c) {
  return {{"hbar", c.hbar}, {"mass", c.mass}, {"c", c.c}, {"charge", c.charge}};
}

PhysConstants constants_from_json(const json& j) {
  check_keys(j, {"hbar", "mass", "c", "charge"}, "constants");
  PhysConstants c;
  c.hbar = get(j, "hbar", c.hbar);
  c.mass = get(j, "mass", c.mass);
  c.c = get(j, "c", c.c);
  c.charge = get(j, "charge", c.charge);
  c.validate();
  return c;
}

}  // namespace

json packet_to_json(const PacketSpec& p) {
  json j = std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PlaneWave>) return {{"k", s.k}};
        else if constexpr (std::is_same_v<T, GaussianPacket>) return {{"a", s.a}, {"b", s.b}};
        else if constexpr (std::is_same_v<T, AiryPacket>) return {{"beta", s.beta}};
        else if constexpr (std::is_same_v<T, ScatteringState>) return {{"k", s.k}, {"f", s.f}};
        else if constexpr (std::is_same_v<T, LandauLevel>)
          return {{"n", s.n}, {"k_x", s.k_x}, {"k_z", s.k_z}, {"s", s.s}, {"B", s.B}};
        else return {{"n", s.n}, {"omega", s.omega}};
      },
      p.state);
  j["variant"] = p.variant_name();
  j["spin_ket"] = ket_to_json(p.spin_ket);
  return j;
}

PacketSpec packet_from_json(const json& j) {
  if (!j.is_object() || !j.contains("variant")) throw ConfigError("state: missing 'variant'");
  const std::string v = get<std::string>(j, "variant", "");
  PacketSpec p;
  if (v == "plane_wave") {
    check_keys(j, {"variant", "k", "spin_ket"}, "state(plane_wave)");
    PlaneWave s;
    const auto k = get(j, "k", std::vector<double>{});
    if (k.size() > 3) throw ConfigError("state(plane_wave): k has more than 3 components");
    std::copy(k.begin(), k.end(), s.k.begin());
    p.state = s;
  } else if (v == "gaussian") {
    check_keys(j, {"variant", "a", "b", "spin_ket"}, "state(gaussian)");
    p.state = GaussianPacket{get(j, "a", 1.0), get(j, "b", 0.0)};
  } else if (v == "airy") {
    check_keys(j, {"variant", "beta", "spin_ket"}, "state(airy)");
    p.state = AiryPacket{get(j, "beta", 1.0)};
  } else if (v == "scattering") {
    check_keys(j, {"variant", "k", "f", "spin_ket"}, "state(scattering)");
    p.state = ScatteringState{get(j, "k", 1.0), get(j, "f", 1.0), true};
  } else if (v == "landau") {
    check_keys(j, {"variant", "n", "k_x", "k_z", "s", "B", "spin_ket"}, "state(landau)");
    p.state = LandauLevel{get(j, "n", 0), get(j, "k_x", 0.0), get(j, "k_z", 0.0), get(j, "s", 0.5), get(j, "B", 1.0)};
  } else if (v == "ho_eigen") {
    check_keys(j, {"variant", "n", "omega", "spin_ket"}, "state(ho_eigen)");
    p.state = OscillatorEigenstate{get(j, "n", 0), get(j, "omega", 1.0)};
  } else {
    throw ConfigError("state: unknown variant '" + v + "'");
  }
  if (j.contains("spin_ket")) {
    p.spin_ket = ket_from_json(j.at("spin_ket"));
  } else if (const auto* l = std::get_if<LandauLevel>(&p.state); l && l->s < 0) {
    p.spin_ket = {cplx{0.0}, cplx{1.0}};
  }
  try {
    p.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return p;
}

std::string RunConfig::state_name() const {
  if (const auto* p = std::get_if<PacketSpec>(&state)) return p->variant_name();
  return "superposition";
}

PotentialSpec RunConfig::resolved_potential() const {
  if (potential) return *potential;
  if (const auto* p = std::get_if<PacketSpec>(&state)) return p->natural_potential();
  return {};
}

bool operator==(const RunConfig& a, const RunConfig& b) { return emit_config(a) == emit_config(b); }

RunConfig parse_config(const json& j) {
  try {
    check_keys(j, {"command", "state", "grid", "potential", "evolution", "tolerance_profile", "tolerances", "output",
                   "seed", "timestamp", "constants", "params"},
               "config");
    RunConfig c;
    c.command = get<std::string>(j, "command", "");
    if (!c.command.empty() &&
        std::none_of(std::begin(kCommands), std::end(kCommands), [&](const char* k) { return c.command == k; }))
      throw ConfigError("config: unknown command '" + c.command + "'");
    if (j.contains("state")) {
      const json& s = j.at("state");
      if (s.is_object() && s.value("variant", "") == "superposition") {
        json rest = s;
        rest.erase("variant");
        c.state = superposition_from_json(rest);
      } else {
        c.state = packet_from_json(s);
      }
    }
    if (j.contains("grid")) c.grid = io::grid_from_json(j.at("grid"));
    if (j.contains("potential")) c.potential = potential_from_json(j.at("potential"));
    if (j.contains("evolution")) {
      const json& e = j.at("evolution");
      check_keys(e, {"dt", "n_steps", "snapshot_stride"}, "evolution");
      c.evolution.dt = get(e, "dt", c.evolution.dt);
      c.evolution.n_steps = get(e, "n_steps", c.evolution.n_steps);
      c.evolution.snapshot_stride = get(e, "snapshot_stride", c.evolution.snapshot_stride);
      if (!(c.evolution.dt > 0) || c.evolution.n_steps == 0 || c.evolution.snapshot_stride == 0)
        throw ConfigError("evolution: dt, n_steps and snapshot_stride must be positive");
    }
    c.tolerance_profile = get<std::string>(j, "tolerance_profile", "default");
    c.tolerances = tolerances_from_json(j.value("tolerances", json::object()), Tolerances::profile(c.tolerance_profile));
    c.output = get<std::string>(j, "output", c.output);
    c.seed = get<std::uint64_t>(j, "seed", 0);
    if (j.contains("timestamp")) c.timestamp = get<std::string>(j, "timestamp", "");
    if (j.contains("constants")) c.constants = constants_from_json(j.at("constants"));
    if (j.contains("params")) c.params = params_from_json(j.at("params"));
    if (c.grid && c.potential) c.potential->validate(*c.grid);
    return c;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

json emit_config(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (const auto* p = std::get_if<PacketSpec>(&c.state)) {
    j["state"] = packet_to_json(*p);
  } else {
    j["state"] = to_json(std::get<SuperpositionSpec>(c.state));
    j["state"]["variant"] = "superposition";
  }
  if (c.grid) j["grid"] = io::to_json(*c.grid);
  if (c.potential) j["potential"] = potential_to_json(*c.potential);
  j["evolution"] = {{"dt", c.evolution.dt}, {"n_steps", c.evolution.n_steps},
                    {"snapshot_stride", c.evolution.snapshot_stride}};
  j["tolerance_profile"] = c.tolerance_profile;
  j["tolerances"] = to_json(c.tolerances);
  j["output"] = c.output;
  j["seed"] = c.seed;
  if (c.timestamp) j["timestamp"] = *c.timestamp;
  j["constants"] = constants_to_json(c.constants);
  j["params"] = params_to_json(c.params);
  return j;
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError("--set: empty key in '" + path + "'");
    if (!node->is_object()) {
      if (!node->is_null()) throw ConfigError("--set: '" + path + "' descends into a non-object");
      *node = json::object();
    }
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

}  // namespace edlab::cli
