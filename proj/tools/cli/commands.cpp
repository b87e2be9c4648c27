#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <random>

#include "edlab/calculus.hpp"
#include "edlab/catalog.hpp"
#include "edlab/explorer.hpp"
#include "edlab/io.hpp"
#include "edlab/observables.hpp"
#include "edlab/propagate.hpp"
#include "edlab/transport.hpp"
#include "edlab/verify.hpp"

namespace edlab::cli {
namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& cols) {
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) out += (k ? "," : "") + header[k];
  out += '\n';
  const std::size_t rows = cols.empty() ? 0 : cols.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols.size(); ++k) out += (k ? "," : "") + num(cols[k][i]);
    out += '\n';
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double rel_linf(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0 ? num / den : num;
}

struct Checks {
  json list = json::array();
  bool all = true;
  void add(const std::string& name, double value, double tolerance, bool pass) {
    list.push_back({{"name", name}, {"value", finite(value)}, {"tolerance", tolerance}, {"pass", pass}});
    all = all && pass;
  }
  void add(const std::string& name, double value, double tolerance) { add(name, value, tolerance, value < tolerance); }
};

class Writer {
 public:
  Writer(const RunConfig& cfg, const std::string& state, const std::string& timestamp)
      : dir_(cfg.output), stem_(cfg.command + "_" + state + "_" + timestamp) {}
  void write(const std::string& ext, const std::string& text) {
    const auto path = dir_ / (stem_ + "." + ext);
    io::write_text(path, text);
    files.push_back(path);
  }
  std::vector<std::filesystem::path> files;

 private:
  std::filesystem::path dir_;
  std::string stem_;
};

json header(const RunConfig& cfg) {
  json j = emit_config(cfg);
  j.erase("output");
  j.erase("timestamp");
  return j;
}

const Grid& need_grid(const RunConfig& cfg) {
  if (!cfg.grid) throw ConfigError(cfg.command + ": config needs a 'grid'");
  return *cfg.grid;
}

SpinorField make_state(const RunConfig& cfg, const Grid& g, double t) {
  if (const auto* p = std::get_if<PacketSpec>(&cfg.state)) return realize(*p, g, t, cfg.constants);
  return realize_superposition(std::get<SuperpositionSpec>(cfg.state), g, t, cfg.constants);
}

const PacketSpec& need_packet(const RunConfig& cfg) {
  const auto* p = std::get_if<PacketSpec>(&cfg.state);
  if (!p) throw ConfigError(cfg.command + ": needs a packet state, not a superposition");
  return *p;
}

std::vector<std::vector<double>> coordinate_columns(const Grid& g, std::vector<std::string>& head) {
  static const char* names[] = {"x", "y", "z"};
  std::vector<std::vector<double>> cols(static_cast<std::size_t>(g.dim()), std::vector<double>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto p = g.point(i);
    for (std::size_t a = 0; a < cols.size(); ++a) cols[a][i] = p[a];
  }
  for (int a = 0; a < g.dim(); ++a) head.push_back(names[a]);
  return cols;
}

void add_vector(const VectorField& v, const std::string& name, std::vector<std::string>& head,
                std::vector<std::vector<double>>& cols) {
  static const char* suffix[] = {"_x", "_y", "_z"};
  for (int a = 0; a < v.dim(); ++a) {
    head.push_back(name + suffix[a]);
    cols.push_back(v.components[static_cast<std::size_t>(a)]);
  }
}

// Nodes at least three points away from every non-periodic edge.
std::vector<unsigned char> interior(const Grid& g) {
  std::vector<unsigned char> in(g.size(), 1);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (int a = 0; a < g.dim(); ++a) {
      const Axis& ax = g.axis(a);
      const auto k = g.axis_index(i, a);
      if (!ax.periodic && (k < 3 || k + 3 >= ax.n)) in[i] = 0;
    }
  return in;
}

RunResult density(const RunConfig& cfg, const std::string& ts) {
  const Grid& g = need_grid(cfg);
  const PotentialSpec U = cfg.resolved_potential();
  const SpinorField phi = make_state(cfg, g, cfg.params.time);
  std::vector<std::string> head;
  auto cols = coordinate_columns(g, head);

  const ScalarField r = rho(phi, U);
  const ScalarField rs = rho_s(phi, U);
  head.push_back("rho");
  cols.push_back(r.values);
  add_vector(current_J(phi, U), "J", head, cols);
  head.push_back("rho_s");
  cols.push_back(rs.values);
  add_vector(upsilon(phi, U), "upsilon", head, cols);

  json integrals = {{"norm", integrate(g, phi.density())}, {"rho", integrate(r)}, {"rho_s", integrate(rs)}};
  if (!U.magnetic()) {
    const ScalarField ra = rho_alt(phi, U);
    head.push_back("rho_alt");
    cols.push_back(ra.values);
    integrals["rho_alt"] = integrate(ra);
    const MadelungDecomposition md = madelung(phi, U);
    std::vector<double> kin(g.size()), pot(g.size()), qu(g.size()), valid(g.size());
    const auto mask = md.mask();
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (const auto& c : md.comp) {
        kin[i] += c.kinetic[i];
        pot[i] += c.potential[i];
        qu[i] += c.quantum[i];
      }
      valid[i] = mask[i];
    }
    for (auto* name : {"madelung_kinetic", "madelung_potential", "madelung_quantum", "madelung_valid"})
      head.push_back(name);
    cols.push_back(kin);
    cols.push_back(pot);
    cols.push_back(qu);
    cols.push_back(valid);
  }

  Writer w(cfg, cfg.state_name(), ts);
  w.write("csv", table(head, cols));
  json rep = header(cfg);
  rep["time"] = phi.time;
  rep["normalization"] = phi.norm == Normalization::normalized     ? "normalized"
                         : phi.norm == Normalization::unnormalized ? "unnormalized"
                                                                   : "non_normalizable";
  rep["integrals"] = integrals;
  rep["mean_energy"] = mean_energy(phi, U);
  rep["pass"] = true;
  w.write("json", io::dump(rep));
  return {0, w.files, rep};
}

json conservation_json(const ConservationReport& r, const RunConfig& cfg, double dt) {
  json j = r.to_json();
  j["state"] = header(cfg)["state"];
  if (cfg.grid) j["grid"] = io::to_json(*cfg.grid);
  j["dt"] = dt;
  j["tolerances"] = to_json(cfg.tolerances);
  return j;
}

RunResult evolve_cmd(const RunConfig& cfg, const std::string& ts) {
  const Grid& g = need_grid(cfg);
  const PotentialSpec U = cfg.resolved_potential();
  const SpinorField phi0 = make_state(cfg, g, cfg.params.time);
  const auto& ev = cfg.evolution;
  const Trajectory traj = evolve(phi0, U, ev.dt, ev.n_steps, ev.snapshot_stride);
  const auto energy = check_energy_conservation(traj, U, cfg.tolerances);
  const auto spin = check_rho_s_conservation(traj, U, cfg.tolerances);

  std::vector<double> t, norm, e;
  for (const auto& s : traj.snapshots) {
    t.push_back(s.time);
    norm.push_back(integrate(g, s.density()));
    e.push_back(mean_energy(s, U));
  }
  Writer w(cfg, cfg.state_name(), ts);
  w.write("csv", table({"t", "norm", "mean_energy"}, {t, norm, e}));
  json rep = header(cfg);
  rep["scheme"] = traj.scheme;
  rep["warnings"] = traj.warnings;
  rep["reports"] = {conservation_json(energy, cfg, ev.dt), conservation_json(spin, cfg, ev.dt)};
  rep["pass"] = energy.pass && spin.pass;
  w.write("json", io::dump(rep));
  return {rep["pass"].get<bool>() ? 0 : 1, w.files, rep};
}

std::vector<Box> random_boxes(const Grid& g, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Box> boxes;
  for (int k = 0; k < count; ++k) {
    Box b;
    for (int a = 0; a < g.dim(); ++a) {
      const Axis& ax = g.axis(a);
      const double lo = ax.min + 0.2 * ax.length();
      const double span = 0.6 * ax.length();
      double p = lo + span * u(), q = lo + span * u();
      if (p > q) std::swap(p, q);
      q = std::max(q, std::min(lo + span, p + 0.1 * ax.length()));
      b.lo[static_cast<std::size_t>(a)] = p;
      b.hi[static_cast<std::size_t>(a)] = q;
    }
    boxes.push_back(b);
  }
  return boxes;
}

RunResult verify_cmd(const RunConfig& cfg, const std::string& ts) {
  const Grid& g = need_grid(cfg);
  const PotentialSpec U = cfg.resolved_potential();
  const Tolerances& tol = cfg.tolerances;
  const SpinorField phi = make_state(cfg, g, cfg.params.time);
  const bool magnetic = U.magnetic() != nullptr;
  const bool normalized = phi.norm == Normalization::normalized;
  const ScalarField r = rho(phi, U);
  const auto d = phi.density();
  Checks checks;
  json reports = json::array();

  if (const auto* p = std::get_if<PacketSpec>(&cfg.state)) {
    const bool ho = std::holds_alternative<OscillatorEigenstate>(p->state);
    if (ho || std::holds_alternative<LandauLevel>(p->state)) {
      const double E = stationary_energy(*p, cfg.constants);
      std::vector<double> expected(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) expected[i] = E * d[i];
      checks.add("stationary_rho", rel_linf(r.values, expected), tol.oracle);
      if (ho) checks.add("stationary_J", max_abs(current_J(phi, U).components[0]), tol.oracle);
    }
    if (const auto* gp = std::get_if<GaussianPacket>(&p->state); gp && U.is_none()) {
      const PhysConstants& c = cfg.constants;
      const double tau = phi.time / (c.mass * gp->a * gp->a * c.hbar);
      const auto J = current_J(phi, U).components[0];
      std::vector<double> r_cf(g.size()), J_cf(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coord(0, i);
        const auto cf = gaussian_closed_forms(gp->a, gp->b, x / (gp->a * c.hbar), tau, c);
        const double dens = std::norm(gaussian_wavefunction(gp->a, gp->b, x, phi.time, c));
        r_cf[i] = cf.rho_over_density * dens;
        J_cf[i] = cf.J_over_density * dens;
      }
      checks.add("gaussian_oracle_rho", rel_linf(r.values, r_cf), tol.oracle);
      checks.add("gaussian_oracle_J", rel_linf(J, J_cf), tol.oracle);
    }
    if (const auto* lp = std::get_if<LandauLevel>(&p->state)) {
      const auto ups = upsilon(phi, U).components[1];
      const auto rs = rho_s(phi, U).values;
      std::vector<double> u_cf(g.size()), r_cf(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        const auto cf = landau_closed_forms(lp->n, lp->k_x, lp->k_z, lp->s, lp->B, g.point(i)[1], cfg.constants);
        u_cf[i] = cf.upsilon_y;
        r_cf[i] = cf.rho_s;
      }
      checks.add("landau_oracle_upsilon", rel_linf(ups, u_cf), tol.oracle);
      checks.add("landau_oracle_rho_s", rel_linf(rs, r_cf), tol.oracle);
    }
  }

  if (!magnetic) {
    checks.add("tmh_equivalence", rel_linf(rho_tmh(phi, U).values, r.values), tol.symmetry);
    const VectorField J = current_J(phi, U);
    VectorField diff = current_JD(phi, U);
    for (std::size_t a = 0; a < diff.components.size(); ++a)
      for (std::size_t i = 0; i < g.size(); ++i) diff.components[a][i] = J.components[a][i] - diff.components[a][i];
    const auto div = divergence(diff).values;
    const auto in = interior(g);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (in[i]) worst = std::max(worst, std::abs(div[i]));
    checks.add("rotor_equivalence", worst, tol.conservation_abs);
    const ScalarField ra = rho_alt(phi, U);
    if (U.is_none()) {
      const double mn = *std::min_element(ra.values.begin(), ra.values.end());
      checks.add("rho_alt_nonnegative", mn, 0.0, mn >= 0.0);
    }
    if (normalized) checks.add("rho_alt_integral", std::abs(integrate(ra) - integrate(r)), tol.global_content);
  }

  const SymmetryReport sym = check_symmetries(phi, tol);
  checks.add("time_reversal", sym.time_reversal_gap, tol.symmetry);

  const HolographyReport holo = check_holography(phi, U, random_boxes(g, cfg.seed, cfg.params.boxes), tol);
  double gap = 0.0;
  for (const auto& b : holo.boxes) gap = std::max(gap, b.gap);
  checks.add("holography", gap, tol.holography);
  if (normalized) checks.add("rho_s_global_content", std::abs(holo.whole_grid_content), tol.global_content);
  reports.push_back(holo.to_json());

  const auto& ev = cfg.evolution;
  if (g.all_periodic() && !magnetic && ev.n_steps / ev.snapshot_stride >= 2) {
    const Trajectory traj = evolve(phi, U, ev.dt, ev.n_steps, ev.snapshot_stride);
    const auto energy = check_energy_conservation(traj, U, tol);
    const auto spin = check_rho_s_conservation(traj, U, tol);
    checks.add("energy_conservation", energy.residual_L2, energy.tolerance, energy.pass);
    checks.add("rho_s_conservation", spin.residual_L2, spin.tolerance, spin.pass);
    reports.push_back(conservation_json(energy, cfg, ev.dt));
    reports.push_back(conservation_json(spin, cfg, ev.dt));
  }

  Writer w(cfg, cfg.state_name(), ts);
  json rep = header(cfg);
  rep["checks"] = checks.list;
  rep["reports"] = reports;
  rep["pass"] = checks.all;
  std::vector<std::string> names;
  std::string csv = "check,value,tolerance,pass\n";
  for (const auto& c : checks.list)
    csv += c["name"].get<std::string>() + "," + (c["value"].is_null() ? "nan" : num(c["value"].get<double>())) + "," +
           num(c["tolerance"].get<double>()) + "," + (c["pass"].get<bool>() ? "1" : "0") + "\n";
  w.write("csv", csv);
  w.write("json", io::dump(rep));
  return {checks.all ? 0 : 1, w.files, rep};
}

std::vector<double> default_times(double start, double stop, double step) {
  std::vector<double> t;
  const int n = static_cast<int>(std::lround((stop - start) / step));
  for (int i = 0; i <= n; ++i) t.push_back(start + step * i);
  return t;
}

RunResult transport_cmd(const RunConfig& cfg, const std::string& ts) {
  const PacketSpec& p = need_packet(cfg);
  const PhysConstants& c = cfg.constants;
  const Tolerances& tol = cfg.tolerances;
  Checks checks;
  json rep = header(cfg);
  Writer w(cfg, cfg.state_name(), ts);
  if (const auto* gp = std::get_if<GaussianPacket>(&p.state)) {
    const auto times = cfg.params.times.empty() ? default_times(0.0, 5.0, 0.25) : cfg.params.times;
    std::size_t n = 2048;
    double half = 60.0;
    if (cfg.grid) {
      const Axis& ax = cfg.grid->axis(0);
      if (cfg.grid->dim() != 1 || !ax.periodic || ax.min != -ax.max)
        throw ConfigError("transport: gaussian grid must be 1D, periodic and symmetric");
      n = ax.n;
      half = ax.max;
    }
    const auto rows = figure1_data(gp->a, gp->b, c, times, n, half);
    const double vc = gp->b / (c.mass * gp->a);
    const double ve = vc * (1.0 + 2.0 / (1.0 + 2.0 * gp->b * gp->b));
    double ec = 0.0, ee = 0.0;
    for (const auto& row : rows) {
      ec = std::max(ec, std::abs(row.v_cor - vc));
      ee = std::max(ee, std::abs(row.v_en - ve));
    }
    const double scale = std::max(1.0, std::abs(ve));
    checks.add("v_cor_closed_form", ec / scale, tol.oracle);
    checks.add("v_en_closed_form", ee / scale, tol.oracle);
    const double gap = (gp->b >= 0 ? 1.0 : -1.0) * (rows.front().v_en - rows.front().v_cor);
    checks.add("energy_outruns_packet", gap, 0.0, gp->b == 0.0 ? std::abs(gap) < tol.oracle : gap > 0.0);
    rep["closed_form"] = {{"v_cor", vc}, {"v_en", ve}};
    w.write("csv", figure1_csv(rows));
  } else if (const auto* ap = std::get_if<AiryPacket>(&p.state)) {
    const auto times = cfg.params.times.empty() ? default_times(0.5, 10.0, 0.25) : cfg.params.times;
    const auto rows = figure3_data(ap->beta, c, times);
    double worst_order = INFINITY, dev = 0.0;
    for (const auto& row : rows) {
      worst_order = std::min(worst_order, row.v_en - row.v_cor);
      dev = std::max(dev, std::abs(row.v_cor - std::pow(ap->beta, 3) * row.t / (2.0 * c.mass * c.mass)));
    }
    checks.add("v_en_not_below_v_cor", worst_order, 0.0, worst_order >= 0.0);
    rep["max_v_cor_deviation_from_closed_form"] = dev;
    w.write("csv", figure3_csv(rows));
  } else {
    throw ConfigError("transport: needs a gaussian or airy state");
  }
  rep["checks"] = checks.list;
  rep["pass"] = checks.all;
  w.write("json", io::dump(rep));
  return {checks.all ? 0 : 1, w.files, rep};
}

RunResult figures_cmd(const RunConfig& cfg, const std::string& ts) {
  const PacketSpec& p = need_packet(cfg);
  const auto* ap = std::get_if<AiryPacket>(&p.state);
  if (!ap) throw ConfigError("figures: needs an airy state");
  const PhysConstants& c = cfg.constants;
  const double t = cfg.params.figure_time;
  const auto rows = figure2_data(ap->beta, t, c);
  std::vector<double> xi, r;
  for (const auto& row : rows) {
    xi.push_back(row.xi);
    r.push_back(row.rho);
  }
  const Grid g = Grid::line(xi.size(), xi.front(), xi.back(), false);
  const double peak = find_peak(ScalarField(g, r), PeakKind::first_from_right);
  const double T = std::pow(ap->beta, 3) * t * t / (4.0 * c.mass * c.mass);
  const double predicted = airy_energy_peak(ap->beta, t, c) - T;
  Checks checks;
  checks.add("peak_within_one_cell", std::abs(peak - predicted), g.spacing(0));
  Writer w(cfg, cfg.state_name(), ts);
  w.write("csv", figure2_csv(rows));
  json rep = header(cfg);
  rep["peak"] = {{"numeric_xi", peak}, {"closed_form_xi", predicted}, {"cell", g.spacing(0)}};
  rep["checks"] = checks.list;
  rep["pass"] = checks.all;
  w.write("json", io::dump(rep));
  return {checks.all ? 0 : 1, w.files, rep};
}

RunResult explore_cmd(const RunConfig& cfg, const std::string& ts) {
  SearchOptions opt;
  opt.lattice = cfg.params.lattice;
  const SearchResult res = conjecture_search(cfg.params.components, cfg.params.budget, cfg.seed, opt, cfg.constants);
  const NegativityMap map = negativity_map(res.best.spec, opt.lattice, cfg.constants);
  std::vector<double> x, t, r;
  for (std::size_t i = 0; i < opt.lattice.nx; ++i)
    for (std::size_t j = 0; j < opt.lattice.nt; ++j) {
      x.push_back(opt.lattice.x(i));
      t.push_back(opt.lattice.t(j));
      r.push_back(map.rho[map.rho.grid.flat({i, j, 0})]);
    }
  Checks checks;
  checks.add("no_nonnegative_state_found", res.best.min_rho, 0.0, !res.reached_nonnegative);
  Writer w(cfg, "superposition", ts);
  w.write("csv", table({"x", "t", "rho"}, {x, t, r}));
  std::string ledger;
  for (const auto& line : res.ledger) ledger += line + '\n';
  w.write("jsonl", ledger);
  json rep = header(cfg);
  rep["best"] = res.best.to_json();
  rep["refined"] = refine_minimum(res.best, cfg.constants).to_json();
  rep["evaluations"] = res.evaluations;
  rep["restarts"] = res.restarts;
  rep["reached_nonnegative"] = res.reached_nonnegative;
  rep["checks"] = checks.list;
  rep["pass"] = checks.all;
  w.write("json", io::dump(rep));
  return {checks.all ? 0 : 1, w.files, rep};
}

RunResult limit_cmd(const RunConfig& cfg, const std::string& ts) {
  const Grid& g = need_grid(cfg);
  const PotentialSpec U = cfg.resolved_potential();
  const SpinorField phi = make_state(cfg, g, cfg.params.time);
  const LimitScalingReport lim = check_limit_scaling(phi, U, cfg.params.c_values, cfg.tolerances);
  Writer w(cfg, cfg.state_name(), ts);
  w.write("csv", table({"c", "residual_L2"}, {lim.c_values, lim.residual_norms}));
  json rep = header(cfg);
  rep["report"] = lim.to_json();
  rep["pass"] = lim.pass;
  w.write("json", io::dump(rep));
  return {lim.pass ? 0 : 1, w.files, rep};
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

RunResult run(const RunConfig& cfg, const std::string& timestamp) {
  if (cfg.command == "density") return density(cfg, timestamp);
  if (cfg.command == "evolve") return evolve_cmd(cfg, timestamp);
  if (cfg.command == "verify") return verify_cmd(cfg, timestamp);
  if (cfg.command == "transport") return transport_cmd(cfg, timestamp);
  if (cfg.command == "figures") return figures_cmd(cfg, timestamp);
  if (cfg.command == "explore") return explore_cmd(cfg, timestamp);
  if (cfg.command == "limit") return limit_cmd(cfg, timestamp);
  throw ConfigError(cfg.command.empty() ? "no command given" : "unknown command '" + cfg.command + "'");
}

}  // namespace edlab::cli
