#include "edlab/observables.hpp"

#include <cmath>

#include "edlab/calculus.hpp"
#include "edlab/error.hpp"
#include "edlab/propagate.hpp"

namespace edlab {
namespace {

using Comp = std::vector<cplx>;
using Spinor = std::array<Comp, 2>;

// sigma_j applied to (u0, u1) at one point.
inline std::array<cplx, 2> sigma(int j, cplx u0, cplx u1) {
  switch (j) {
    case 0: return {u1, u0};
    case 1: return {-kI * u1, kI * u0};
    default: return {u0, -u1};
  }
}

// a^dag sigma_j b at point i.
inline cplx sandwich(int j, const Spinor& a, const Spinor& b, std::size_t i) {
  const auto s = sigma(j, b[0][i], b[1][i]);
  return std::conj(a[0][i]) * s[0] + std::conj(a[1][i]) * s[1];
}

inline double levi(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0)) ? 1.0 : -1.0;
}

std::vector<Spinor> gradient(const SpinorField& phi) {
  std::vector<Spinor> g(static_cast<std::size_t>(phi.grid.dim()));
  for (int a = 0; a < phi.grid.dim(); ++a)
    for (std::size_t s = 0; s < 2; ++s) g[static_cast<std::size_t>(a)][s] = derivative(phi.grid, phi.comp[s], a, 1);
  return g;
}

void require_no_field(const PotentialSpec& U, const char* where) {
  require(!U.magnetic(), std::string(where) + ": magnetic potentials are not supported");
}

}  // namespace

ScalarField rho_tmh(const SpinorField& phi, const PotentialSpec& U) {
  const SpinorField h = apply_H(phi, U);
  ScalarField out(phi.grid, phi.time);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += (std::conj(phi.comp[s][i]) * h.comp[s][i]).real();
  return out;
}

ScalarField rho(const SpinorField& phi, const PotentialSpec& U) {
  if (U.magnetic()) return rho_tmh(phi, U);
  phi.validate();
  const PhysConstants& c = phi.constants;
  const double kin = -c.hbar * c.hbar / (4.0 * c.mass);
  const auto u = U.sample(phi.grid, c, phi.time);
  ScalarField out(phi.grid, phi.time);
  for (std::size_t s = 0; s < 2; ++s) {
    const auto& f = phi.comp[s];
    const auto lap = laplacian(phi.grid, f);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += kin * (std::conj(lap[i]) * f[i] + std::conj(f[i]) * lap[i]).real() + u[i] * std::norm(f[i]);
  }
  return out;
}

VectorField current_J(const SpinorField& phi, const SpinorField& phidot) {
  require_same_grid(phi.grid, phidot.grid, "current_J");
  const PhysConstants& c = phi.constants;
  const double pre = c.hbar * c.hbar / (2.0 * c.mass);
  VectorField out(phi.grid, phi.time);
  for (int a = 0; a < phi.grid.dim(); ++a) {
    auto& J = out.components[static_cast<std::size_t>(a)];
    for (std::size_t s = 0; s < 2; ++s) {
      const auto dphi = derivative(phi.grid, phi.comp[s], a, 1);
      const auto ddot = derivative(phi.grid, phidot.comp[s], a, 1);
      for (std::size_t i = 0; i < J.size(); ++i)
        J[i] += pre * (std::conj(phi.comp[s][i]) * ddot[i] - std::conj(dphi[i]) * phidot.comp[s][i]).real();
    }
  }
  return out;
}

VectorField current_J(const SpinorField& phi, const PotentialSpec& U) {
  const SpinorField phidot = time_derivative(phi, U);
  VectorField out = current_J(phi, phidot);
  if (const auto* mag = U.magnetic()) {
    // Covariant x-derivative d_x - i kappa y in the Landau gauge.
    const PhysConstants& c = phi.constants;
    const double kappa = c.charge * mag->B / c.hbar;
    const double pre = c.hbar * c.hbar / c.mass;
    for (std::size_t i = 0; i < out.components[0].size(); ++i) {
      const double y = phi.grid.point(i)[1];
      double im = 0.0;
      for (std::size_t s = 0; s < 2; ++s) im += (std::conj(phi.comp[s][i]) * phidot.comp[s][i]).imag();
      out.components[0][i] += pre * kappa * y * im;
    }
  }
  return out;
}

VectorField probability_current(const SpinorField& phi) {
  const PhysConstants& c = phi.constants;
  VectorField out(phi.grid, phi.time);
  const auto g = gradient(phi);
  for (int a = 0; a < phi.grid.dim(); ++a) {
    auto& j = out.components[static_cast<std::size_t>(a)];
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t i = 0; i < j.size(); ++i)
        j[i] += c.hbar / c.mass * (std::conj(phi.comp[s][i]) * g[static_cast<std::size_t>(a)][s][i]).imag();
  }
  return out;
}

ScalarField rho_alt(const SpinorField& phi, const PotentialSpec& U) {
  require_no_field(U, "rho_alt");
  phi.validate();
  const PhysConstants& c = phi.constants;
  const auto u = U.sample(phi.grid, c, phi.time);
  const auto g = gradient(phi);
  ScalarField out(phi.grid, phi.time);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double grad2 = 0.0;
    for (const auto& ga : g) grad2 += std::norm(ga[0][i]) + std::norm(ga[1][i]);
    out[i] = c.hbar * c.hbar / (2.0 * c.mass) * grad2 + u[i] * (std::norm(phi.comp[0][i]) + std::norm(phi.comp[1][i]));
  }
  return out;
}

VectorField current_JD(const SpinorField& phi, const PotentialSpec& U) {
  require_no_field(U, "current_JD");
  phi.validate();
  const Grid& grid = phi.grid;
  const PhysConstants& c = phi.constants;
  const auto u = U.sample(grid, c, phi.time);
  const double pre3 = c.hbar * c.hbar * c.hbar / (4.0 * c.mass * c.mass);
  const auto g = gradient(phi);
  const int d = grid.dim();

  VectorField out(grid, phi.time);
  for (std::size_t s = 0; s < 2; ++s) {
    const auto& f = phi.comp[s];
    const auto lap = laplacian(grid, f);
    for (int a = 0; a < d; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      auto& J = out.components[ua];
      const auto dlap = derivative(grid, lap, a, 1);
      std::vector<double> cross(grid.size(), 0.0);
      for (int b = 0; b < d; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        const auto dab = derivative(grid, g[ub][s], a, 1);
        for (std::size_t i = 0; i < cross.size(); ++i) cross[i] += (std::conj(g[ub][s][i]) * dab[i]).imag();
      }
      for (std::size_t i = 0; i < J.size(); ++i) {
        const double flow = (std::conj(f[i]) * g[ua][s][i]).imag();
        J[i] += c.hbar * u[i] / c.mass * flow - pre3 * ((std::conj(f[i]) * dlap[i]).imag() - cross[i]);
      }
    }
  }
  return out;
}

ScalarField MadelungDecomposition::total() const {
  ScalarField out(comp[0].density.grid, comp[0].density.time);
  for (const auto& m : comp)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += m.kinetic[i] + m.potential[i] + m.quantum[i];
  return out;
}

std::vector<unsigned char> MadelungDecomposition::mask() const {
  const std::size_t n = comp[0].density.size();
  std::vector<unsigned char> m(n, 1);
  for (const auto& cs : comp)
    for (std::size_t i = 0; i < n; ++i)
      if (!cs.valid[i] && cs.density[i] > threshold * threshold) m[i] = 0;
  return m;
}

MadelungDecomposition madelung(const SpinorField& phi, const PotentialSpec& U, double threshold) {
  require_no_field(U, "madelung");
  phi.validate();
  const Grid& grid = phi.grid;
  const PhysConstants& c = phi.constants;
  const auto u = U.sample(grid, c, phi.time);
  const auto g = gradient(phi);
  const double h2m = c.hbar * c.hbar / (2.0 * c.mass);

  MadelungDecomposition out;
  out.threshold = threshold;
  for (std::size_t s = 0; s < 2; ++s) {
    const auto& f = phi.comp[s];
    const auto lap = laplacian(grid, f);
    MadelungComponent m{ScalarField(grid, phi.time), VectorField(grid, phi.time), ScalarField(grid, phi.time),
                        ScalarField(grid, phi.time), ScalarField(grid, phi.time),
                        std::vector<unsigned char>(grid.size(), 0)};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double dens = std::norm(f[i]);
      m.density[i] = dens;
      m.potential[i] = u[i] * dens;
      if (std::sqrt(dens) <= threshold) continue;
      m.valid[i] = 1;
      double im2 = 0.0;
      double re2 = 0.0;
      double grad2 = 0.0;
      for (int a = 0; a < grid.dim(); ++a) {
        const cplx w = std::conj(f[i]) * g[static_cast<std::size_t>(a)][s][i];
        m.velocity.components[static_cast<std::size_t>(a)][i] = c.hbar * w.imag() / (c.mass * dens);
        im2 += w.imag() * w.imag();
        re2 += w.real() * w.real();
        grad2 += std::norm(g[static_cast<std::size_t>(a)][s][i]);
      }
      m.kinetic[i] = h2m * im2 / dens;
      // |phi| Lap|phi| = Re(phi^* Lap phi) + |grad phi|^2 - |grad |phi||^2
      m.quantum[i] = -h2m * ((std::conj(f[i]) * lap[i]).real() + grad2 - re2 / dens);
    }
    out.comp[s] = std::move(m);
  }
  return out;
}

VectorField upsilon(const SpinorField& phi, const PotentialSpec& U) {
  phi.validate();
  const Grid& grid = phi.grid;
  const PhysConstants& c = phi.constants;
  const int d = grid.dim();

  // Pi_k phi = -i hbar d_k phi + |e| A_k phi, A = (-B y, 0, 0).
  std::array<Spinor, 3> pi;
  for (int k = 0; k < 3; ++k)
    for (std::size_t s = 0; s < 2; ++s) {
      auto& p = pi[static_cast<std::size_t>(k)][s];
      if (k < d) {
        p = derivative(grid, phi.comp[s], k, 1);
        for (auto& v : p) v *= -kI * c.hbar;
      } else {
        p.assign(grid.size(), cplx{});
      }
    }
  if (const auto* mag = U.magnetic()) {
    U.validate(grid);
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double y = grid.coord(1, grid.axis_index(i, 1));
        pi[0][s][i] += -c.charge * mag->B * y * phi.comp[s][i];
      }
  }

  const double pre = c.hbar / (4.0 * c.mass);
  VectorField out(grid, phi.time);
  for (int i_ax = 0; i_ax < d; ++i_ax) {
    auto& Y = out.components[static_cast<std::size_t>(i_ax)];
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double e = levi(i_ax, j, k);
        if (e == 0.0) continue;
        for (std::size_t p = 0; p < grid.size(); ++p)
          Y[p] += pre * e * sandwich(j, phi.comp, pi[static_cast<std::size_t>(k)], p).real();
      }
  }
  return out;
}

ScalarField rho_s(const SpinorField& phi, const PotentialSpec& U) { return divergence(upsilon(phi, U)); }

ScalarField rho_s_cross(const SpinorField& phi) {
  phi.validate();
  const Grid& grid = phi.grid;
  const PhysConstants& c = phi.constants;
  const auto g = gradient(phi);
  const int d = grid.dim();
  const double pre = c.hbar * c.hbar / (4.0 * c.mass);
  ScalarField out(grid, phi.time);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < d; ++k) {
        const double e = levi(i, j, k);
        if (e == 0.0) continue;
        const auto& gi = g[static_cast<std::size_t>(i)];
        const auto& gk = g[static_cast<std::size_t>(k)];
        for (std::size_t p = 0; p < grid.size(); ++p) out[p] += pre * e * (-kI * sandwich(j, gi, gk, p)).real();
      }
  return out;
}

RestSplit rest_split(const SpinorField& phi) {
  phi.validate();
  const Grid& grid = phi.grid;
  const PhysConstants& c = phi.constants;
  const auto g = gradient(phi);
  const cplx pre = -kI * c.hbar / (2.0 * c.mass * c.c);

  SpinorField chi(grid, c, phi.time);
  for (int a = 0; a < grid.dim(); ++a) {
    const auto& ga = g[static_cast<std::size_t>(a)];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto s = sigma(a, ga[0][i], ga[1][i]);
      chi.comp[0][i] += pre * s[0];
      chi.comp[1][i] += pre * s[1];
    }
  }

  const double mc2 = c.mass * c.c * c.c;
  const double w = c.hbar * c.hbar / (4.0 * c.mass * c.mass * c.c * c.c);
  ScalarField n0(grid, phi.time);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double grad2 = 0.0;
    for (const auto& ga : g) grad2 += std::norm(ga[0][i]) + std::norm(ga[1][i]);
    n0[i] = std::norm(phi.comp[0][i]) + std::norm(phi.comp[1][i]) + w * grad2;
  }
  ScalarField rs = rho_s_cross(phi);
  ScalarField resid(grid, phi.time);
  const auto dphi = phi.density();
  const auto dchi = chi.density();
  for (std::size_t i = 0; i < grid.size(); ++i) resid[i] = mc2 * (dphi[i] + dchi[i]) - mc2 * n0[i] - rs[i];
  return {std::move(chi), std::move(n0), std::move(rs), std::move(resid)};
}

BispinorField assemble_bispinor(const SpinorField& phi) {
  const RestSplit split = rest_split(phi);
  BispinorField psi(phi.grid, phi.constants, phi.time);
  psi.comp[0] = phi.comp[0];
  psi.comp[1] = phi.comp[1];
  psi.comp[2] = split.chi.comp[0];
  psi.comp[3] = split.chi.comp[1];
  return psi;
}

ScalarField dirac_rho(const BispinorField& psi, const BispinorField& psidot) {
  require_same_grid(psi.grid, psidot.grid, "dirac_rho");
  ScalarField out(psi.grid, psi.time);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += -psi.constants.hbar * (std::conj(psi.comp[k][i]) * psidot.comp[k][i]).imag();
  return out;
}

VectorField dirac_J(const BispinorField& psi, const BispinorField& psidot) {
  require_same_grid(psi.grid, psidot.grid, "dirac_J");
  const PhysConstants& c = psi.constants;
  VectorField out(psi.grid, psi.time);
  for (int a = 0; a < psi.grid.dim(); ++a) {
    auto& J = out.components[static_cast<std::size_t>(a)];
    for (std::size_t i = 0; i < J.size(); ++i) {
      const auto up = sigma(a, psidot.comp[2][i], psidot.comp[3][i]);
      const auto lo = sigma(a, psidot.comp[0][i], psidot.comp[1][i]);
      const cplx v = std::conj(psi.comp[0][i]) * up[0] + std::conj(psi.comp[1][i]) * up[1] +
                     std::conj(psi.comp[2][i]) * lo[0] + std::conj(psi.comp[3][i]) * lo[1];
      J[i] = -c.hbar * c.c * v.imag();
    }
  }
  return out;
}

SpinorField time_reverse(const SpinorField& phi) {
  SpinorField out = phi;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    out.comp[0][i] = std::conj(phi.comp[1][i]);
    out.comp[1][i] = -std::conj(phi.comp[0][i]);
  }
  return out;
}

}  // namespace edlab
