#include "edlab/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "edlab/error.hpp"

namespace edlab {
namespace {

// Per-component constants and the time-dependent pieces of the closed form.
struct Prepared {
  cplx coeff;
  double x0, k0, v, omega0, sigma2, log_norm;
};

struct AtTime {
  cplx inv4w;     // 1 / (4 sigma^2 w)
  cplx inv2w;     // 1 / (2 sigma^2 w)
  cplx log_amp;   // log(n) - log(w)/2 - i omega0 t + log(coeff)
  double center;  // x0 + v t
};

std::vector<Prepared> prepare(const SuperpositionSpec& s, const PhysConstants& c) {
  std::vector<Prepared> p;
  for (const auto& g : s.components) {
    const double k0 = g.p0 / c.hbar;
    p.push_back({g.coeff, g.x0, k0, g.p0 / c.mass, c.hbar * k0 * k0 / (2.0 * c.mass), g.sigma * g.sigma,
                 -0.25 * std::log(2.0 * kPi * g.sigma * g.sigma)});
  }
  return p;
}

std::vector<AtTime> at_time(const std::vector<Prepared>& p, double t, const PhysConstants& c) {
  std::vector<AtTime> out;
  for (const auto& q : p) {
    const cplx w(1.0, c.hbar * t / (2.0 * c.mass * q.sigma2));
    out.push_back({1.0 / (4.0 * q.sigma2 * w), 1.0 / (2.0 * q.sigma2 * w),
                   q.log_norm - 0.5 * std::log(w) - kI * q.omega0 * t + std::log(q.coeff), q.x0 + q.v * t});
  }
  return out;
}

// psi and psi'' scaled by exp(-shift); returns shift.
double eval_scaled(const std::vector<Prepared>& p, const std::vector<AtTime>& at, double x, cplx& psi, cplx& psi2) {
  thread_local std::vector<cplx> expo;
  expo.resize(p.size());
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double d = x - at[j].center;
    expo[j] = at[j].log_amp - d * d * at[j].inv4w + kI * p[j].k0 * (x - p[j].x0);
    shift = std::max(shift, expo[j].real());
  }
  psi = 0.0;
  psi2 = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double d = x - at[j].center;
    const cplx e1 = -d * at[j].inv2w + kI * p[j].k0;
    const cplx v = std::exp(expo[j] - shift);
    psi += v;
    psi2 += v * (e1 * e1 - at[j].inv2w);
  }
  return shift;
}

double rho_prefactor(const SuperpositionSpec& s, const PhysConstants& c) {
  const double n2 = s.normalized ? superposition_norm2(s, c) : 1.0;
  require(n2 > 0, "superposition: zero norm");
  return -c.hbar * c.hbar / (2.0 * c.mass) / n2;
}

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

// 53-bit uniform in [0, 1) from the raw engine output.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

nlohmann::json cplx_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

void SuperpositionSpec::validate() const {
  require(!components.empty(), "superposition: needs at least one component");
  for (const auto& g : components) {
    require(g.sigma > 0 && std::isfinite(g.sigma), "superposition: widths must be positive");
    require(std::isfinite(g.x0) && std::isfinite(g.p0), "superposition: non-finite center or momentum");
    require(std::isfinite(g.coeff.real()) && std::isfinite(g.coeff.imag()), "superposition: non-finite coefficient");
  }
}

SuperpositionSpec SuperpositionSpec::from_gaussian(double a, double b, const PhysConstants& c) {
  require(a > 0, "from_gaussian: a must be positive");
  return {{GaussianComponent{cplx{1.0}, 0.0, b / a, a * c.hbar / std::sqrt(2.0)}}, true};
}

nlohmann::json to_json(const SuperpositionSpec& s) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& g : s.components)
    comps.push_back({{"coeff", cplx_json(g.coeff)}, {"x0", g.x0}, {"p0", g.p0}, {"sigma", g.sigma}});
  return {{"components", comps}, {"normalized", s.normalized}};
}

SuperpositionSpec superposition_from_json(const nlohmann::json& j) {
  require(j.is_object(), "superposition: expected an object");
  for (const auto& [key, _] : j.items())
    require(key == "components" || key == "normalized", "superposition: unknown key '" + key + "'");
  SuperpositionSpec s;
  s.normalized = j.value("normalized", true);
  for (const auto& c : j.at("components")) {
    for (const auto& [key, _] : c.items())
      require(key == "coeff" || key == "x0" || key == "p0" || key == "sigma",
              "superposition component: unknown key '" + key + "'");
    GaussianComponent g;
    if (c.contains("coeff")) {
      const auto& z = c.at("coeff");
      g.coeff = z.is_array() ? cplx(z.at(0).get<double>(), z.at(1).get<double>()) : cplx(z.get<double>());
    }
    g.x0 = c.value("x0", 0.0);
    g.p0 = c.value("p0", 0.0);
    g.sigma = c.value("sigma", 1.0);
    s.components.push_back(g);
  }
  s.validate();
  return s;
}

double superposition_norm2(const SuperpositionSpec& s, const PhysConstants& c) {
  s.validate();
  // <i|j> at t = 0 via the integral of exp(-A x^2 + B x + C).
  cplx total = 0.0;
  for (const auto& gi : s.components)
    for (const auto& gj : s.components) {
      const double si2 = gi.sigma * gi.sigma;
      const double sj2 = gj.sigma * gj.sigma;
      const double ki = gi.p0 / c.hbar;
      const double kj = gj.p0 / c.hbar;
      const double A = 0.25 / si2 + 0.25 / sj2;
      const cplx B = gi.x0 / (2.0 * si2) + gj.x0 / (2.0 * sj2) + kI * (kj - ki);
      const cplx C = -gi.x0 * gi.x0 / (4.0 * si2) - gj.x0 * gj.x0 / (4.0 * sj2) + kI * (ki * gi.x0 - kj * gj.x0);
      const double norms = std::pow(2.0 * kPi * si2, -0.25) * std::pow(2.0 * kPi * sj2, -0.25);
      total += std::conj(gi.coeff) * gj.coeff * norms * std::sqrt(kPi / A) * std::exp(B * B / (4.0 * A) + C);
    }
  return total.real();
}

cplx superposition_value(const SuperpositionSpec& s, double x, double t, const PhysConstants& c) {
  const auto p = prepare(s, c);
  const auto at = at_time(p, t, c);
  cplx psi, psi2;
  const double shift = eval_scaled(p, at, x, psi, psi2);
  const double n = s.normalized ? std::sqrt(superposition_norm2(s, c)) : 1.0;
  return psi * std::exp(shift) / n;
}

double superposition_rho(const SuperpositionSpec& s, double x, double t, const PhysConstants& c) {
  const auto p = prepare(s, c);
  const auto at = at_time(p, t, c);
  cplx psi, psi2;
  const double shift = eval_scaled(p, at, x, psi, psi2);
  return rho_prefactor(s, c) * (std::conj(psi) * psi2).real() * std::exp(2.0 * shift);
}

double superposition_rho_scaled(const SuperpositionSpec& s, double x, double t, const PhysConstants& c) {
  const auto p = prepare(s, c);
  const auto at = at_time(p, t, c);
  cplx psi, psi2;
  eval_scaled(p, at, x, psi, psi2);
  return -(std::conj(psi) * psi2).real();
}

SpinorField realize_superposition(const SuperpositionSpec& s, const Grid& g, double t, const PhysConstants& c) {
  require(g.dim() == 1, "realize_superposition: needs a 1D grid");
  const auto p = prepare(s, c);
  const auto at = at_time(p, t, c);
  const double n = s.normalized ? std::sqrt(superposition_norm2(s, c)) : 1.0;
  SpinorField f(g, c, t);
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx psi, psi2;
    const double shift = eval_scaled(p, at, g.coord(0, i), psi, psi2);
    f.comp[0][i] = psi * std::exp(shift) / n;
  }
  f.norm = s.normalized ? Normalization::normalized : Normalization::unnormalized;
  return f;
}

nlohmann::json to_json(const Lattice& l) {
  return {{"x_lo", l.x_lo}, {"x_hi", l.x_hi}, {"nx", l.nx}, {"t_lo", l.t_lo}, {"t_hi", l.t_hi}, {"nt", l.nt}};
}

nlohmann::json NegativityRecord::to_json() const {
  return {{"spec", edlab::to_json(spec)},
          {"min_rho", min_rho},
          {"argmin", {{"x", argmin_x}, {"t", argmin_t}}},
          {"lattice", edlab::to_json(lattice)},
          {"budget_spent", budget_spent},
          {"search_space", search_space}};
}

NegativityRecord lattice_minimum(const SuperpositionSpec& s, const Lattice& l, const PhysConstants& c) {
  s.validate();
  require(l.nx >= 2 && l.nt >= 1 && l.x_hi > l.x_lo && (l.nt == 1 || l.t_hi > l.t_lo), "lattice: invalid ranges");
  for (const auto& g : s.components)
    require(g.sigma >= 2.0 * l.dx(), "negativity: component width below two lattice cells");
  const auto p = prepare(s, c);
  const double pre = rho_prefactor(s, c);
  NegativityRecord r;
  r.spec = s;
  r.lattice = l;
  r.min_rho = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < l.nt; ++j) {
    const double t = l.t(j);
    const auto at = at_time(p, t, c);
    for (std::size_t i = 0; i < l.nx; ++i) {
      const double x = l.x(i);
      cplx psi, psi2;
      const double shift = eval_scaled(p, at, x, psi, psi2);
      const double v = pre * (std::conj(psi) * psi2).real() * std::exp(2.0 * shift);
      if (v < r.min_rho) {
        r.min_rho = v;
        r.argmin_x = x;
        r.argmin_t = t;
      }
    }
  }
  return r;
}

NegativityMap negativity_map(const SuperpositionSpec& s, const Lattice& l, const PhysConstants& c) {
  NegativityRecord rec = lattice_minimum(s, l, c);
  const Grid g({Axis{l.nx, l.x_lo, l.x_hi, false}, Axis{l.nt, l.t_lo, l.t_hi, false}});
  ScalarField f(g);
  const auto p = prepare(s, c);
  const double pre = rho_prefactor(s, c);
  for (std::size_t j = 0; j < l.nt; ++j) {
    const auto at = at_time(p, l.t(j), c);
    for (std::size_t i = 0; i < l.nx; ++i) {
      cplx psi, psi2;
      const double shift = eval_scaled(p, at, l.x(i), psi, psi2);
      f[g.flat({i, j, 0})] = pre * (std::conj(psi) * psi2).real() * std::exp(2.0 * shift);
    }
  }
  return {std::move(f), std::move(rec)};
}

NegativityRecord refine_minimum(const NegativityRecord& r, const PhysConstants& c) {
  NegativityRecord out = r;
  auto vertex = [](double fm, double f0, double fp) {
    const double den = fm - 2.0 * f0 + fp;
    return den > 0 ? 0.5 * (fm - fp) / den : 0.0;
  };
  const double hx = r.lattice.dx();
  const double hx_shift = vertex(superposition_rho(r.spec, r.argmin_x - hx, r.argmin_t, c), r.min_rho,
                                 superposition_rho(r.spec, r.argmin_x + hx, r.argmin_t, c));
  double x = r.argmin_x + std::clamp(hx_shift, -1.0, 1.0) * hx;
  double t = r.argmin_t;
  const double ht = r.lattice.dt();
  if (ht > 0) {
    const double f0 = superposition_rho(r.spec, x, t, c);
    const double shift = vertex(superposition_rho(r.spec, x, t - ht, c), f0, superposition_rho(r.spec, x, t + ht, c));
    t += std::clamp(shift, -1.0, 1.0) * ht;
  }
  const double v = superposition_rho(r.spec, x, t, c);
  if (v < out.min_rho) {
    out.min_rho = v;
    out.argmin_x = x;
    out.argmin_t = t;
  }
  return out;
}

bool negative_somewhere(const SuperpositionSpec& s, double t, double x_lo, double x_hi, std::size_t nx,
                        const PhysConstants& c) {
  require(nx >= 2 && x_hi > x_lo, "negative_somewhere: invalid lattice");
  const auto p = prepare(s, c);
  const auto at = at_time(p, t, c);
  const double h = (x_hi - x_lo) / static_cast<double>(nx - 1);
  for (std::size_t i = 0; i < nx; ++i) {
    cplx psi, psi2;
    eval_scaled(p, at, x_lo + static_cast<double>(i) * h, psi, psi2);
    if ((std::conj(psi) * psi2).real() > 0) return true;  // rho = -(hbar^2/2m) Re(psi^* psi'')
  }
  return false;
}

double negativity_boundary(const SuperpositionSpec& s, double t_in, double t_out, double x_lo, double x_hi,
                           std::size_t nx, double tol, const PhysConstants& c) {
  require(negative_somewhere(s, t_in, x_lo, x_hi, nx, c), "negativity_boundary: no negativity at t_in");
  require(!negative_somewhere(s, t_out, x_lo, x_hi, nx, c), "negativity_boundary: negativity persists at t_out");
  while (std::abs(t_out - t_in) > tol) {
    const double mid = 0.5 * (t_in + t_out);
    (negative_somewhere(s, mid, x_lo, x_hi, nx, c) ? t_in : t_out) = mid;
  }
  return 0.5 * (t_in + t_out);
}

SearchResult conjecture_search(int N, std::size_t budget, std::uint64_t seed, const SearchOptions& opt,
                               const PhysConstants& c) {
  require(N >= 1, "conjecture_search: N must be >= 1");
  require(budget >= 100, "conjecture_search: budget must be >= 100");
  require(opt.sigma_min >= 2.0 * opt.lattice.dx(), "conjecture_search: sigma_min below two lattice cells");
  const std::size_t nc = static_cast<std::size_t>(N);
  const std::size_t dim = 3 * nc + 2 * (nc - 1);

  auto decode = [&](const std::vector<double>& u) {
    SuperpositionSpec s;
    std::size_t k = 0;
    for (std::size_t j = 0; j < nc; ++j) {
      GaussianComponent g;
      g.x0 = opt.x_max * std::tanh(u[k++]);
      g.p0 = opt.p_max * std::tanh(u[k++]);
      g.sigma = opt.sigma_min + (opt.sigma_max - opt.sigma_min) * sigmoid(u[k++]);
      if (j > 0) {
        const double re = opt.coeff_max * std::tanh(u[k++]);
        const double im = opt.coeff_max * std::tanh(u[k++]);
        g.coeff = cplx(re, im);
      }
      s.components.push_back(g);
    }
    return s;
  };

  SearchResult res;
  res.best.min_rho = -std::numeric_limits<double>::infinity();
  res.best.lattice = opt.lattice;

  auto objective = [&](const std::vector<double>& u) {
    const SuperpositionSpec s = decode(u);
    ++res.evaluations;
    if (superposition_norm2(s, c) < 1e-10) return std::numeric_limits<double>::infinity();
    NegativityRecord r = lattice_minimum(s, opt.lattice, c);
    if (r.min_rho > res.best.min_rho) {
      r.budget_spent = res.evaluations;
      res.best = r;
      nlohmann::json line = r.to_json();
      line["evaluation"] = res.evaluations;
      res.ledger.push_back(line.dump());
    }
    return -r.min_rho;
  };

  std::mt19937_64 rng(seed);
  while (res.evaluations < budget) {
    // New simplex around a random start.
    std::vector<std::vector<double>> simplex(dim + 1, std::vector<double>(dim));
    for (double& v : simplex[0]) v = -2.0 + 4.0 * uniform01(rng);
    for (std::size_t i = 1; i <= dim; ++i) {
      simplex[i] = simplex[0];
      simplex[i][i - 1] += opt.initial_step;
    }
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i <= dim && res.evaluations < budget; ++i) fv[i] = objective(simplex[i]);

    while (res.evaluations < budget) {
      std::vector<std::size_t> order(dim + 1);
      for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      std::vector<std::vector<double>> sx;
      std::vector<double> sf;
      for (std::size_t i : order) {
        sx.push_back(simplex[i]);
        sf.push_back(fv[i]);
      }
      simplex = std::move(sx);
      fv = std::move(sf);

      double size = 0.0;
      for (std::size_t i = 1; i <= dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[0][k]));
      if (size < opt.restart_size || !(std::abs(fv[dim] - fv[0]) > 1e-15 * (1.0 + std::abs(fv[0])))) break;

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k] / static_cast<double>(dim);
      auto along = [&](double coef) {
        std::vector<double> p(dim);
        for (std::size_t k = 0; k < dim; ++k) p[k] = centroid[k] + coef * (simplex[dim][k] - centroid[k]);
        return p;
      };

      const auto xr = along(-1.0);
      const double fr = objective(xr);
      if (fr < fv[0]) {
        if (res.evaluations >= budget) break;
        const auto xe = along(-2.0);
        const double fe = objective(xe);
        if (fe < fr) {
          simplex[dim] = xe;
          fv[dim] = fe;
        } else {
          simplex[dim] = xr;
          fv[dim] = fr;
        }
      } else if (fr < fv[dim - 1]) {
        simplex[dim] = xr;
        fv[dim] = fr;
      } else {
        if (res.evaluations >= budget) break;
        const bool outside = fr < fv[dim];
        const auto xc = along(outside ? -0.5 : 0.5);
        const double fc = objective(xc);
        if (fc < (outside ? fr : fv[dim])) {
          simplex[dim] = xc;
          fv[dim] = fc;
        } else {
          for (std::size_t i = 1; i <= dim && res.evaluations < budget; ++i) {
            for (std::size_t k = 0; k < dim; ++k) simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
            fv[i] = objective(simplex[i]);
          }
        }
      }
    }
    ++res.restarts;
  }
  res.reached_nonnegative = res.best.min_rho >= 0.0;
  return res;
}

}  // namespace edlab
