#include <cmath>
#include <functional>
#include <numbers>

#include <gtest/gtest.h>

#include "edlab/calculus.hpp"
#include "edlab/catalog.hpp"
#include "edlab/error.hpp"
#include "edlab/propagate.hpp"
#include "test_support.hpp"

using namespace edlab;

namespace {

using CFun = std::function<cplx(double)>;

// Seven-point central differences.
cplx d1(const CFun& f, double x, double h = 1e-2) {
  return (-f(x - 3 * h) + 9.0 * f(x - 2 * h) - 45.0 * f(x - h) + 45.0 * f(x + h) - 9.0 * f(x + 2 * h) + f(x + 3 * h)) /
         (60.0 * h);
}
cplx d2(const CFun& f, double x, double h = 1e-2) {
  return (2.0 * f(x - 3 * h) - 27.0 * f(x - 2 * h) + 270.0 * f(x - h) - 490.0 * f(x) + 270.0 * f(x + h) -
          27.0 * f(x + 2 * h) + 2.0 * f(x + 3 * h)) /
         (180.0 * h * h);
}

PhysConstants odd_units() {
  PhysConstants c;
  c.hbar = 0.7;
  c.mass = 1.3;
  return c;
}

}  // namespace

TEST(Catalog, SpinExpectation) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto z = spin_expectation({cplx{1.0}, cplx{0.0}});
  const auto x = spin_expectation({cplx{r}, cplx{r}});
  const auto y = spin_expectation({cplx{r}, cplx{0.0, r}});
  EXPECT_NEAR(z[2], 1.0, 1e-15);
  EXPECT_NEAR(x[0], 1.0, 1e-15);
  EXPECT_NEAR(y[1], 1.0, 1e-15);
  EXPECT_NEAR(y[0], 0.0, 1e-15);
}

TEST(Catalog, ValidationRejectsBadSpecs) {
  EXPECT_THROW((PacketSpec{GaussianPacket{-1.0, 0.0}}.validate()), Error);
  EXPECT_THROW((PacketSpec{LandauLevel{0, 0.0, 0.0, 0.3, 1.0}}.validate()), Error);
  EXPECT_THROW((PacketSpec{OscillatorEigenstate{-1, 1.0}}.validate()), Error);
  PacketSpec bad_ket{AiryPacket{1.0}};
  bad_ket.spin_ket = {cplx{1.0}, cplx{1.0}};
  EXPECT_THROW(bad_ket.validate(), Error);
}

TEST(Catalog, RealizeRejectsWrongDimension) {
  const Grid g2({Axis{8, 0, 1, true}, Axis{8, 0, 1, true}});
  EXPECT_THROW(realize(PacketSpec{GaussianPacket{}}, g2, 0.0), Error);
  EXPECT_THROW(realize(PacketSpec{ScatteringState{}}, Grid::line(16, -1, 1), 0.0), Error);
  EXPECT_THROW(realize(PacketSpec{LandauLevel{0, 0.0, 1.0, 0.5, 1.0}}, g2, 0.0), Error);
}

TEST(Catalog, ScatteringCarveIsRequiredNearTheOrigin) {
  const Grid g({Axis{9, -1, 1, false}, Axis{9, -1, 1, false}, Axis{9, -1, 1, false}});
  EXPECT_THROW(realize(PacketSpec{ScatteringState{1.0, 1.0, false}}, g, 0.0), Error);
  EXPECT_NO_THROW(realize(PacketSpec{ScatteringState{1.0, 1.0, true}}, g, 0.0));
}

TEST(Catalog, NormalizableStatesAreNormalized) {
  const Grid g = Grid::line(512, -30.0, 30.0);
  for (const PacketSpec& s : {PacketSpec{GaussianPacket{1.3, 0.4}}, PacketSpec{OscillatorEigenstate{3, 0.8}}}) {
    const SpinorField phi = realize(s, g, 0.6, odd_units());
    EXPECT_EQ(phi.norm, Normalization::normalized);
    EXPECT_NEAR(integrate(g, phi.density()), 1.0, 1e-12);
  }
}

TEST(Catalog, OscillatorEigenstatesAreEigenvectors) {
  const PhysConstants c = odd_units();
  const Grid g = Grid::line(256, -20.0, 20.0);
  for (int n = 0; n <= 5; ++n) {
    const PacketSpec s{OscillatorEigenstate{n, 1.7}};
    const SpinorField phi = realize(s, g, 0.0, c);
    const SpinorField h = apply_H(phi, s.natural_potential());
    const double E = stationary_energy(s, c);
    EXPECT_NEAR(E, (n + 0.5) * c.hbar * 1.7, 1e-14);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LT(std::abs(h.comp[0][i] - E * phi.comp[0][i]), 1e-11);
  }
}

TEST(Catalog, LandauLevelsAreEigenvectors) {
  const PhysConstants c;
  const Grid g({Axis{16, 0.0, std::numbers::pi, true}, Axis{256, -14.0, 14.0, true}});
  for (int n : {0, 1, 3})
    for (double s : {0.5, -0.5}) {
      PacketSpec spec{LandauLevel{n, -2.0, 0.0, s, 2.0}};
      const SpinorField phi = realize(spec, g, 0.0, c);
      const SpinorField h = apply_H(phi, spec.natural_potential());
      const double E = stationary_energy(spec, c);
      EXPECT_NEAR(E, (n + 0.5 + s) * 2.0, 1e-13);
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LT(std::abs(h.comp[k][i] - E * phi.comp[k][i]), 1e-9);
    }
}

TEST(Catalog, GaussianSolvesTheFreeSchrodingerEquation) {
  const PhysConstants c = odd_units();
  for (double t : {-1.0, 0.0, 0.8})
    for (double x : {-2.0, 0.3, 1.7}) {
      const cplx dt = d1([&](double s) { return gaussian_wavefunction(1.1, 0.6, x, s, c); }, t);
      const cplx dxx = d2([&](double s) { return gaussian_wavefunction(1.1, 0.6, s, t, c); }, x);
      EXPECT_LT(std::abs(kI * c.hbar * dt + c.hbar * c.hbar / (2 * c.mass) * dxx), 1e-7);
    }
}

TEST(Catalog, GaussianClosedFormsMatchFiniteDifferences) {
  for (const PhysConstants& c : {PhysConstants{}, odd_units()})
    for (double b : {0.0, 1.0, -2.0})
      for (double tau : {0.0, 0.5, 2.0})
        for (double xi : {-1.5, 0.0, 0.4, 2.0}) {
          const double a = 0.9;
          const double t = tau * c.mass * a * a * c.hbar;
          const double x = xi * a * c.hbar;
          auto psi = [&](double s, double time) { return gaussian_wavefunction(a, b, s, time, c); };
          const cplx f = psi(x, t);
          const cplx fx = d1([&](double s) { return psi(s, t); }, x);
          const cplx fxx = d2([&](double s) { return psi(s, t); }, x);
          const cplx ft = d1([&](double s) { return psi(x, s); }, t);
          const cplx ftx = d1([&](double s) { return d1([&](double u) { return psi(s, u); }, t); }, x);
          const double dens = std::norm(f);
          const double rho = -c.hbar * c.hbar / (2 * c.mass) * (std::conj(f) * fxx).real();
          const double J = c.hbar * c.hbar / (2 * c.mass) * (std::conj(f) * ftx - std::conj(fx) * ft).real();
          const double v = c.hbar / c.mass * (std::conj(f) * fx).imag() / dens;
          const auto cf = gaussian_closed_forms(a, b, xi, tau, c);
          const double scale = 1.0 + std::abs(b) * std::abs(b);
          EXPECT_NEAR(cf.rho_over_density, rho / dens, 1e-6 * scale * scale);
          EXPECT_NEAR(cf.J_over_density, J / dens, 1e-6 * scale * scale * scale);
          EXPECT_NEAR(cf.v, v, 1e-7 * scale);
        }
}

TEST(Catalog, AiryPacketSolvesTheSchrodingerEquation) {
  const PhysConstants c = odd_units();
  for (double t : {0.0, 1.3})
    for (double x : {-5.0, -1.0, 0.5}) {
      const cplx dt = d1([&](double s) { return airy_wavefunction(1.2, x, s, c); }, t);
      const cplx dxx = d2([&](double s) { return airy_wavefunction(1.2, s, t, c); }, x);
      EXPECT_LT(std::abs(kI * c.hbar * dt + c.hbar * c.hbar / (2 * c.mass) * dxx), 1e-7);
    }
}

TEST(Catalog, AiryEnergyDensityAndPeak) {
  const PhysConstants c;
  const double beta = 1.0;
  for (double t : {1.0, std::sqrt(6.0), 4.0}) {
    for (double x : {-6.0, -1.0, 0.7}) {
      const cplx f = airy_wavefunction(beta, x, t, c);
      const cplx fxx = d2([&](double s) { return airy_wavefunction(beta, s, t, c); }, x);
      EXPECT_NEAR(airy_energy_density(beta, x, t, c), -0.5 * (std::conj(f) * fxx).real(), 1e-8);
    }
    const double xp = airy_energy_peak(beta, t, c);
    const double h = 1e-4;
    const double slope = (airy_energy_density(beta, xp + h, t, c) - airy_energy_density(beta, xp - h, t, c)) / (2 * h);
    EXPECT_NEAR(slope, 0.0, 1e-7);
    EXPECT_GT(airy_energy_density(beta, xp, t, c), airy_energy_density(beta, xp + 0.05, t, c));
    EXPECT_GT(airy_energy_density(beta, xp, t, c), airy_energy_density(beta, xp - 0.05, t, c));
    // No further local maximum to the right.
    double prev = airy_energy_density(beta, xp + 0.01, t, c);
    bool rising = false;
    for (double x = xp + 0.02; x < xp + 30.0; x += 0.01) {
      const double cur = airy_energy_density(beta, x, t, c);
      EXPECT_FALSE(rising && cur < prev) << "local maximum near " << x;
      rising = cur > prev;
      prev = cur;
    }
  }
}

TEST(Catalog, ScatteringRhoSMatchesFiniteDifferences) {
  const PhysConstants c = odd_units();
  const double k = 1.3, f = 0.8;
  const double r = 1.0 / std::sqrt(2.0);
  for (const std::array<cplx, 2>& ket :
       {std::array<cplx, 2>{r, r}, std::array<cplx, 2>{r, cplx(0, r)}, std::array<cplx, 2>{0.6, cplx(0.48, 0.64)}}) {
    const auto mu = spin_expectation(ket);
    for (const std::array<double, 3>& p : {std::array<double, 3>{1.0, 2.0, -0.5}, {-2.5, 0.3, 1.4}, {0.2, -3.0, 2.2}}) {
      auto psi = [&](const std::array<double, 3>& q) {
        const double rr = std::hypot(q[0], q[1], q[2]);
        return std::exp(kI * k * q[2]) + f * std::exp(kI * k * rr) / rr;
      };
      std::array<cplx, 3> grad;
      for (std::size_t a = 0; a < 3; ++a)
        grad[a] = d1(
            [&](double s) {
              auto q = p;
              q[a] = s;
              return psi(q);
            },
            p[a], 1e-3);
      // rho_s = hbar^2/(4m) eps_ijk mu_j Im(d_i psi^* d_k psi)
      double expected = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int kk = 0; kk < 3; ++kk) {
            const double eps = (i - j) * (j - kk) * (kk - i) / 2.0;
            if (eps == 0) continue;
            expected += eps * mu[static_cast<std::size_t>(j)] *
                        (std::conj(grad[static_cast<std::size_t>(i)]) * grad[static_cast<std::size_t>(kk)]).imag();
          }
      expected *= c.hbar * c.hbar / (4.0 * c.mass);
      EXPECT_NEAR(scattering_rho_s(k, f, mu, p, c), expected, 1e-9);
    }
  }
}

TEST(Catalog, ScatteringSphereContent) {
  const PhysConstants c;
  const std::array<double, 3> mu{1.0, 0.0, 0.0};
  for (double R : {5.0, 12.0, 40.0}) {
    EXPECT_NEAR(scattering_sphere_content(1.0, 1.0, mu, R, false, c), 0.0, 1e-10);
    // Independent product-midpoint quadrature of the positive part.
    const int nt = 800, np = 400;
    double sum = 0.0;
    for (int i = 0; i < nt; ++i) {
      const double th = std::numbers::pi * (i + 0.5) / nt;
      for (int j = 0; j < np; ++j) {
        const double ph = 2.0 * std::numbers::pi * (j + 0.5) / np;
        const std::array<double, 3> p{R * std::sin(th) * std::cos(ph), R * std::sin(th) * std::sin(ph), R * std::cos(th)};
        sum += std::max(0.0, scattering_rho_s(1.0, 1.0, mu, p, c)) * std::sin(th);
      }
    }
    sum *= R * R * (std::numbers::pi / nt) * (2.0 * std::numbers::pi / np);
    const double content = scattering_sphere_content(1.0, 1.0, mu, R, true, c);
    EXPECT_GT(content, 0.0);
    EXPECT_NEAR(content, sum, 2e-3 * content);
  }
}

TEST(Catalog, LandauProfileMatchesTheRealizedField) {
  const PhysConstants c;
  const Grid g({Axis{8, 0.0, std::numbers::pi, true}, Axis{512, -20.0, 20.0, true}});
  PacketSpec spec{LandauLevel{3, -2.0, 0.0, -0.5, 2.0}};
  const SpinorField phi = realize(spec, g, 0.0, c);
  const auto dens = phi.density();
  const std::size_t ref = g.size() / 2 + 3;
  const double p_ref = landau_profile(3, -2.0, 2.0, g.point(ref)[1], c);
  const double scale = dens[ref] / (p_ref * p_ref);
  for (std::size_t i = 0; i < g.size(); i += 7) {
    const double prof = landau_profile(3, -2.0, 2.0, g.point(i)[1], c);
    EXPECT_NEAR(dens[i], scale * prof * prof, 1e-12);
  }
  // rho_s is the y derivative of upsilon_y.
  const double h = 1e-4;
  for (double y : {-3.0, -1.2, 0.5}) {
    const double up = landau_closed_forms(3, -2.0, 0.0, -0.5, 2.0, y + h, c).upsilon_y;
    const double dn = landau_closed_forms(3, -2.0, 0.0, -0.5, 2.0, y - h, c).upsilon_y;
    EXPECT_NEAR(landau_closed_forms(3, -2.0, 0.0, -0.5, 2.0, y, c).rho_s, (up - dn) / (2 * h), 1e-6);
  }
}
