#include "edlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edlab/calculus.hpp"
#include "edlab/error.hpp"
#include "edlab/observables.hpp"

namespace edlab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Series = std::vector<std::vector<double>>;

// Time derivative of snapshot q in the subsequence of stride s. Returns the
// indices q (in original numbering) for which the stencil fits.
struct Stencil {
  std::vector<std::size_t> centers;
  int order = 0;
};

Stencil time_stencil(std::size_t n_snap, std::size_t stride) {
  const std::size_t ns = (n_snap - 1) / stride + 1;
  Stencil st;
  if (ns >= 5) {
    st.order = 4;
    for (std::size_t q = 2; q + 2 < ns; ++q) st.centers.push_back(q * stride);
  } else if (ns >= 3) {
    st.order = 2;
    for (std::size_t q = 1; q + 1 < ns; ++q) st.centers.push_back(q * stride);
  }
  return st;
}

std::vector<double> rate(const Series& d, std::size_t j, std::size_t s, int order, double dt) {
  std::vector<double> out(d[j].size());
  const double h = dt * static_cast<double>(s);
  if (order == 4) {
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = (d[j - 2 * s][i] - 8.0 * d[j - s][i] + 8.0 * d[j + s][i] - d[j + 2 * s][i]) / (12.0 * h);
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (d[j + s][i] - d[j - s][i]) / (2.0 * h);
  }
  return out;
}

double linf(const std::vector<double>& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

struct StrideResult {
  double l2 = 0.0;
  double linf = 0.0;
  double rate_l2 = 0.0;
  std::vector<SnapshotResidual> snaps;
  bool ok = false;
};

// `residual(j, s, order)` returns {residual field, rate field} at snapshot j.
template <class F>
StrideResult run_stride(const Trajectory& traj, std::size_t s, F&& residual) {
  StrideResult r;
  const Stencil st = time_stencil(traj.snapshots.size(), s);
  if (st.centers.empty()) return r;
  const Grid& g = traj.snapshots.front().grid;
  for (std::size_t j : st.centers) {
    const auto [res, rt] = residual(j, s, st.order);
    SnapshotResidual sr{traj.snapshots[j].time, l2_norm(g, res), linf(res), l2_norm(g, rt)};
    r.l2 = std::max(r.l2, sr.l2);
    r.linf = std::max(r.linf, sr.linf);
    r.rate_l2 = std::max(r.rate_l2, sr.rate_l2);
    r.snaps.push_back(sr);
  }
  r.ok = true;
  return r;
}

template <class F>
ConservationReport conservation_report(const std::string& name, const Trajectory& traj, const Tolerances& tol,
                                       F&& residual) {
  require(traj.snapshots.size() >= 3, name + ": needs at least 3 snapshots");
  ConservationReport rep;
  rep.check = name;
  rep.tolerance = tol.conservation_abs;
  const StrideResult r1 = run_stride(traj, 1, residual);
  rep.residual_L2 = r1.l2;
  rep.residual_Linf = r1.linf;
  rep.rate_L2 = r1.rate_l2;
  rep.relative = r1.rate_l2 > 0 ? r1.l2 / r1.rate_l2 : (r1.l2 > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  rep.per_snapshot = r1.snaps;

  // Three-stride Richardson estimate of the time-discretization order.
  rep.convergence_order = kNaN;
  const StrideResult r2 = run_stride(traj, 2, residual);
  const StrideResult r4 = run_stride(traj, 4, residual);
  if (r2.ok && r4.ok) {
    const double d1 = r2.l2 - r1.l2;
    const double d2 = r4.l2 - r2.l2;
    if (d1 > 0 && d2 > 0) rep.convergence_order = std::log2(d2 / d1);
  }
  rep.pass = rep.residual_L2 < tol.conservation_abs || rep.relative < tol.conservation_rel;
  return rep;
}

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

Tolerances Tolerances::profile(const std::string& name) {
  if (name == "default") return {};
  if (name == "strict") {
    Tolerances t;
    t.conservation_abs = 1e-7;
    t.conservation_rel = 1e-4;
    t.work_term = 1e-6;
    t.holography = 1e-8;
    t.global_content = 1e-10;
    t.symmetry = 1e-12;
    t.limit_slope = 0.05;
    t.oracle = 1e-10;
    t.order_band = 0.1;
    return t;
  }
  throw Error("unknown tolerance profile '" + name + "' (expected default or strict)");
}

nlohmann::json to_json(const Tolerances& t) {
  return {{"conservation_abs", t.conservation_abs}, {"conservation_rel", t.conservation_rel},
          {"work_term", t.work_term},               {"holography", t.holography},
          {"global_content", t.global_content},     {"symmetry", t.symmetry},
          {"limit_slope", t.limit_slope},           {"oracle", t.oracle},
          {"order_band", t.order_band}};
}

Tolerances tolerances_from_json(const nlohmann::json& j, Tolerances t) {
  require(j.is_object(), "tolerances: expected an object");
  for (const auto& [key, v] : j.items()) {
    require(v.is_number(), "tolerances: '" + key + "' must be a number");
    const double x = v.get<double>();
    require(x > 0 && std::isfinite(x), "tolerances: '" + key + "' must be positive");
    if (key == "conservation_abs") t.conservation_abs = x;
    else if (key == "conservation_rel") t.conservation_rel = x;
    else if (key == "work_term") t.work_term = x;
    else if (key == "holography") t.holography = x;
    else if (key == "global_content") t.global_content = x;
    else if (key == "symmetry") t.symmetry = x;
    else if (key == "limit_slope") t.limit_slope = x;
    else if (key == "oracle") t.oracle = x;
    else if (key == "order_band") t.order_band = x;
    else throw Error("tolerances: unknown key '" + key + "'");
  }
  return t;
}

double l2_norm(const Grid& g, const std::vector<double>& f) {
  std::vector<double> sq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
  return std::sqrt(std::max(0.0, integrate(g, sq)));
}

std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "linear_fit: need at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

nlohmann::json ConservationReport::to_json() const {
  nlohmann::json snaps = nlohmann::json::array();
  for (const auto& s : per_snapshot)
    snaps.push_back({{"time", s.time}, {"l2", num(s.l2)}, {"linf", num(s.linf)}, {"rate_l2", num(s.rate_l2)}});
  return {{"check", check},
          {"residuals",
           {{"L2", num(residual_L2)},
            {"Linf", num(residual_Linf)},
            {"relative", num(relative)},
            {"rate_L2", num(rate_L2)},
            {"global_content", num(global_content)},
            {"per_snapshot", snaps}}},
          {"order", num(convergence_order)},
          {"tolerance", tolerance},
          {"pass", pass}};
}

ConservationReport check_energy_conservation(const Trajectory& traj, const PotentialSpec& U, const Tolerances& tol,
                                             bool include_work) {
  const std::size_t n = traj.snapshots.size();
  require(n >= 3, "check_energy_conservation: needs at least 3 snapshots");
  Series dens(n), div_j(n), work(n);
  for (std::size_t j = 0; j < n; ++j) {
    const SpinorField& phi = traj.snapshots[j];
    dens[j] = rho(phi, U).values;
    div_j[j] = divergence(current_J(phi, U)).values;
    work[j] = U.sample_rate(phi.grid, phi.constants, phi.time);
    const auto d = phi.density();
    for (std::size_t i = 0; i < d.size(); ++i) work[j][i] = include_work ? work[j][i] * d[i] : 0.0;
  }
  const double dt = traj.snapshot_dt();
  Tolerances t = tol;
  if (include_work && U.time_dependent()) t.conservation_abs = tol.work_term;
  return conservation_report(include_work ? "energy_conservation" : "energy_conservation_without_work", traj, t,
                             [&](std::size_t j, std::size_t s, int order) {
                               auto rt = rate(dens, j, s, order, dt);
                               std::vector<double> res(rt.size());
                               for (std::size_t i = 0; i < rt.size(); ++i) res[i] = rt[i] + div_j[j][i] - work[j][i];
                               return std::pair{res, rt};
                             });
}

ConservationReport check_rho_s_conservation(const Trajectory& traj, const PotentialSpec& U, const Tolerances& tol) {
  const std::size_t n = traj.snapshots.size();
  require(n >= 3, "check_rho_s_conservation: needs at least 3 snapshots");
  const Grid& g = traj.snapshots.front().grid;
  const auto d = static_cast<std::size_t>(g.dim());
  Series rs(n);
  std::vector<Series> ups(d, Series(n));
  double content = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const VectorField y = upsilon(traj.snapshots[j], U);
    for (std::size_t a = 0; a < d; ++a) ups[a][j] = y.components[a];
    rs[j] = divergence(y).values;
    content = std::max(content, std::abs(integrate(g, rs[j])));
  }
  const double dt = traj.snapshot_dt();
  ConservationReport rep =
      conservation_report("rho_s_conservation", traj, tol, [&](std::size_t j, std::size_t s, int order) {
        auto rt = rate(rs, j, s, order, dt);
        VectorField js(g, traj.snapshots[j].time);
        for (std::size_t a = 0; a < d; ++a) {
          js.components[a] = rate(ups[a], j, s, order, dt);
          for (double& v : js.components[a]) v = -v;
        }
        const auto div = divergence(js).values;
        std::vector<double> res(rt.size());
        for (std::size_t i = 0; i < rt.size(); ++i) res[i] = rt[i] + div[i];
        return std::pair{res, rt};
      });
  rep.global_content = content;
  rep.pass = rep.pass && content < tol.global_content;
  return rep;
}

nlohmann::json HolographyReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : boxes)
    arr.push_back({{"lo", b.box.lo},
                   {"hi", b.box.hi},
                   {"volume_integral", num(b.volume_integral)},
                   {"surface_integral", num(b.surface_integral)},
                   {"gap", num(b.gap)},
                   {"pass", b.pass}});
  return {{"check", "holography"},
          {"residuals", {{"boxes", arr}, {"whole_grid_content", num(whole_grid_content)}}},
          {"order", nullptr},
          {"pass", pass}};
}

HolographyReport check_holography(const SpinorField& phi, const PotentialSpec& U, const std::vector<Box>& boxes,
                                  const Tolerances& tol) {
  const VectorField y = upsilon(phi, U);
  const ScalarField rs = divergence(y);
  HolographyReport rep;
  rep.whole_grid_content = integrate(rs);
  rep.pass = std::abs(rep.whole_grid_content) < tol.global_content;
  for (const Box& b : boxes) {
    HolographyResult r;
    r.box = b;
    r.volume_integral = integrate(rs, b);
    r.surface_integral = surface_integral(y, b);
    r.gap = std::abs(r.volume_integral - r.surface_integral);
    r.pass = r.gap < tol.holography;
    rep.pass = rep.pass && r.pass;
    rep.boxes.push_back(r);
  }
  return rep;
}

nlohmann::json LimitScalingReport::to_json() const {
  return {{"check", "limit_scaling"},
          {"residuals", {{"c", c_values}, {"norm", residual_norms}}},
          {"order", num(slope)},
          {"intercept", num(intercept)},
          {"pass", pass}};
}

LimitScalingReport check_limit_scaling(const SpinorField& phi, const PotentialSpec& U,
                                       const std::vector<double>& c_values, const Tolerances& tol) {
  require(c_values.size() >= 3, "check_limit_scaling: needs at least 3 values of c");
  const auto [lo, hi] = std::minmax_element(c_values.begin(), c_values.end());
  require(*lo > 0 && *hi / *lo >= 100.0 * (1.0 - 1e-12), "check_limit_scaling: c values must span two decades");
  LimitScalingReport rep;
  rep.c_values = c_values;
  std::vector<double> lx, ly;
  for (double c : c_values) {
    SpinorField p = phi;
    p.constants.c = c;
    const BispinorField psi = assemble_bispinor(p);
    const ScalarField vr = dirac_rho(psi, dirac_time_derivative(psi, U));
    const ScalarField r = rho(p, U);
    const double mc2 = p.constants.mass * c * c;
    const auto dens = psi.density();
    std::vector<double> res(vr.size());
    for (std::size_t i = 0; i < res.size(); ++i) res[i] = vr[i] - mc2 * dens[i] - r[i];
    const double nrm = l2_norm(p.grid, res);
    rep.residual_norms.push_back(nrm);
    lx.push_back(std::log(c));
    ly.push_back(std::log(nrm));
  }
  std::tie(rep.slope, rep.intercept) = linear_fit(lx, ly);
  rep.pass = std::isfinite(rep.slope) && std::abs(rep.slope + 2.0) < tol.limit_slope;
  return rep;
}

nlohmann::json SymmetryReport::to_json() const {
  return {{"check", "symmetries"},
          {"residuals", {{"time_reversal_gap", num(time_reversal_gap)}, {"space_inversion_gap", num(space_inversion_gap)}}},
          {"order", nullptr},
          {"pass", pass}};
}

SymmetryReport check_symmetries(const SpinorField& phi, const Tolerances& tol) {
  SymmetryReport rep;
  const ScalarField base = rho_s(phi);
  const ScalarField rev = rho_s(time_reverse(phi));
  for (std::size_t i = 0; i < base.size(); ++i)
    rep.time_reversal_gap = std::max(rep.time_reversal_gap, std::abs(rev[i] - base[i]));

  rep.space_inversion_gap = kNaN;
  std::vector<std::size_t> inv;
  try {
    inv = inversion_map(phi.grid);
  } catch (const Error&) {
    inv.clear();
  }
  if (!inv.empty()) {
    SpinorField p = phi;
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t i = 0; i < phi.size(); ++i) p.comp[s][i] = phi.comp[s][inv[i]];
    const ScalarField flipped = rho_s(p);
    rep.space_inversion_gap = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i)
      rep.space_inversion_gap = std::max(rep.space_inversion_gap, std::abs(flipped[i] - base[inv[i]]));
  }
  rep.pass = rep.time_reversal_gap < tol.symmetry &&
             (std::isnan(rep.space_inversion_gap) || rep.space_inversion_gap < tol.symmetry);
  return rep;
}

}  // namespace edlab
