#include "edlab/propagate.hpp"

#include <cmath>
#include <sstream>

#include "edlab/calculus.hpp"
#include "edlab/error.hpp"
#include "edlab/fft.hpp"

namespace edlab {
namespace {

std::vector<cplx> kinetic_magnetic(const SpinorField& phi, std::size_t s, double kappa) {
  // (d_x - i kappa y)^2 + d_y^2 + d_z^2
  const Grid& g = phi.grid;
  const auto& f = phi.comp[s];
  auto out = laplacian(g, f);
  const auto dx = derivative(g, f, 0, 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double y = g.coord(1, g.axis_index(i, 1));
    out[i] += -2.0 * kI * kappa * y * dx[i] - kappa * kappa * y * y * f[i];
  }
  return out;
}

}  // namespace

SpinorField apply_H(const SpinorField& phi, const PotentialSpec& U) {
  phi.validate();
  const Grid& g = phi.grid;
  const PhysConstants& c = phi.constants;
  const double kin = -c.hbar * c.hbar / (2.0 * c.mass);
  SpinorField out = phi;
  out.norm = Normalization::unnormalized;

  if (const auto* mag = U.magnetic()) {
    U.validate(g);
    const double wB = c.charge * mag->B / c.mass;
    const double kappa = c.mass * wB / c.hbar;
    const double zeeman = 0.5 * c.hbar * wB;
    for (std::size_t s = 0; s < 2; ++s) {
      auto k = kinetic_magnetic(phi, s, kappa);
      const double sz = s == 0 ? zeeman : -zeeman;
      for (std::size_t i = 0; i < k.size(); ++i) out.comp[s][i] = kin * k[i] + sz * phi.comp[s][i];
    }
    return out;
  }

  const auto u = U.sample(g, c, phi.time);
  for (std::size_t s = 0; s < 2; ++s) {
    const auto lap = laplacian(g, phi.comp[s]);
    for (std::size_t i = 0; i < lap.size(); ++i) out.comp[s][i] = kin * lap[i] + u[i] * phi.comp[s][i];
  }
  return out;
}

SpinorField time_derivative(const SpinorField& phi, const PotentialSpec& U) {
  SpinorField h = apply_H(phi, U);
  const cplx f = -kI / phi.constants.hbar;
  for (auto& comp : h.comp)
    for (auto& v : comp) v *= f;
  return h;
}

double mean_energy(const SpinorField& phi, const PotentialSpec& U) {
  const SpinorField h = apply_H(phi, U);
  std::vector<double> d(phi.size(), 0.0);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += (std::conj(phi.comp[s][i]) * h.comp[s][i]).real();
  return integrate(phi.grid, d);
}

BispinorField apply_dirac_H(const BispinorField& psi, const PotentialSpec& U) {
  psi.validate();
  require(!U.magnetic(), "apply_dirac_H: magnetic potentials are not supported");
  const Grid& g = psi.grid;
  const PhysConstants& c = psi.constants;
  const double mc2 = c.mass * c.c * c.c;
  const auto u = U.sample(g, c, psi.time);

  BispinorField out(g, c, psi.time);
  for (std::size_t k = 0; k < 4; ++k) {
    const double beta = k < 2 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < g.size(); ++i) out.comp[k][i] = (beta * mc2 + u[i]) * psi.comp[k][i];
  }
  // alpha_a = [[0, sigma_a], [sigma_a, 0]]; add -i hbar c alpha . grad psi.
  const cplx pre = -kI * c.hbar * c.c;
  for (int a = 0; a < g.dim(); ++a) {
    std::array<std::vector<cplx>, 4> d;
    for (std::size_t k = 0; k < 4; ++k) d[k] = derivative(g, psi.comp[k], a, 1);
    for (int half = 0; half < 2; ++half) {
      // target block (rows) receives sigma_a applied to the other block
      const std::size_t dst = half == 0 ? 0 : 2;
      const std::size_t src = half == 0 ? 2 : 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const cplx u0 = d[src][i];
        const cplx u1 = d[src + 1][i];
        cplx r0;
        cplx r1;
        switch (a) {
          case 0: r0 = u1; r1 = u0; break;
          case 1: r0 = -kI * u1; r1 = kI * u0; break;
          default: r0 = u0; r1 = -u1; break;
        }
        out.comp[dst][i] += pre * r0;
        out.comp[dst + 1][i] += pre * r1;
      }
    }
  }
  return out;
}

BispinorField dirac_time_derivative(const BispinorField& psi, const PotentialSpec& U) {
  BispinorField h = apply_dirac_H(psi, U);
  const cplx f = -kI / psi.constants.hbar;
  for (auto& comp : h.comp)
    for (auto& v : comp) v *= f;
  return h;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(snapshots.size());
  for (const auto& s : snapshots) t.push_back(s.time);
  return t;
}

double max_kinetic_phase(const Grid& g, const PhysConstants& c, double dt) {
  double k2 = 0.0;
  for (const auto& ax : g.axes()) {
    const double k = kPi / ax.spacing();
    k2 += k * k;
  }
  return c.hbar * k2 * dt / (2.0 * c.mass);
}

Trajectory evolve(const SpinorField& phi0, const PotentialSpec& U, double dt, std::size_t n_steps,
                  std::size_t snapshot_stride) {
  phi0.validate();
  const Grid& g = phi0.grid;
  const PhysConstants& c = phi0.constants;
  require(dt > 0 && std::isfinite(dt), "evolve: dt must be positive");
  require(snapshot_stride >= 1, "evolve: snapshot_stride must be >= 1");
  require(g.all_periodic(), "evolve: split-step evolution needs an all-periodic grid");
  require(!U.magnetic(), "evolve: magnetic evolution is not supported");
  U.validate(g);

  Trajectory traj;
  traj.dt = dt;
  traj.snapshot_stride = snapshot_stride;
  const double phase = max_kinetic_phase(g, c, dt);
  if (phase > kPi) {
    std::ostringstream w;
    w << "kinetic phase per step " << phase << " exceeds pi at the grid's largest wavenumber";
    traj.warnings.push_back(w.str());
  }

  std::vector<cplx> drift(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double k = g.axis(a).wavenumber(g.axis_index(i, a));
      k2 += k * k;
    }
    drift[i] = std::polar(1.0 / static_cast<double>(g.size()), -c.hbar * k2 * dt / (2.0 * c.mass));
  }

  const bool has_potential = !U.is_none();
  const bool static_potential = !U.time_dependent();
  std::vector<cplx> kick;
  auto build_kick = [&](double t_mid) {
    const auto u = U.sample(g, c, t_mid);
    kick.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) kick[i] = std::polar(1.0, -u[i] * dt / (2.0 * c.hbar));
  };
  if (has_potential && static_potential) build_kick(phi0.time);

  SpinorField phi = phi0;
  traj.snapshots.push_back(phi);
  for (std::size_t step = 1; step <= n_steps; ++step) {
    const double t_mid = phi0.time + (static_cast<double>(step) - 0.5) * dt;
    if (has_potential && !static_potential) build_kick(t_mid);
    for (auto& comp : phi.comp) {
      if (has_potential)
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= kick[i];
      fft::transform_all(g, comp, fft::Direction::forward);
      for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= drift[i];
      fft::transform_all(g, comp, fft::Direction::backward);
      if (has_potential)
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= kick[i];
    }
    phi.time = phi0.time + static_cast<double>(step) * dt;
    if (step % snapshot_stride == 0) traj.snapshots.push_back(phi);
  }
  return traj;
}

}  // namespace edlab
