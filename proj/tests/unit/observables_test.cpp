#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "edlab/calculus.hpp"
#include "edlab/catalog.hpp"
#include "edlab/error.hpp"
#include "edlab/observables.hpp"
#include "edlab/propagate.hpp"
#include "test_support.hpp"

using namespace edlab;
using edlab::testing::generic_packet;
using edlab::testing::max_abs;
using edlab::testing::rel_linf;

namespace {

PhysConstants odd_units() {
  PhysConstants c;
  c.hbar = 0.7;
  c.mass = 1.3;
  return c;
}

Grid square(std::size_t n, double half) { return Grid({Axis{n, -half, half, true}, Axis{n, -half, half, true}}); }

SpinorField generic_spinor(const Grid& g, const PhysConstants& c = {}) {
  return make_spinor(g, generic_packet(g), {cplx{0.6}, cplx{0.0, 0.8}}, c);
}

// rho is quadratic in phi, so the central difference along phidot is exact.
std::vector<double> rho_rate(const SpinorField& phi, const SpinorField& phidot, const PotentialSpec& U) {
  const double eps = 1e-3;
  SpinorField up = phi, dn = phi;
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t i = 0; i < phi.size(); ++i) {
      up.comp[s][i] += eps * phidot.comp[s][i];
      dn.comp[s][i] -= eps * phidot.comp[s][i];
    }
  const auto a = rho(up, U).values, b = rho(dn, U).values;
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] - b[i]) / (2 * eps);
  return out;
}

}  // namespace

TEST(Observables, PlaneWaveDensityAndCurrent) {
  const PhysConstants c = odd_units();
  const Grid g = Grid::line(64, 0.0, 2.0 * std::numbers::pi, true);
  const double k = 3.0;
  std::vector<cplx> psi(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) psi[i] = 0.5 * std::polar(1.0, k * g.coord(0, i));
  const SpinorField phi = make_spinor(g, psi, {cplx{1.0}, cplx{0.0}}, c);
  const auto r = rho(phi).values;
  const auto J = current_J(phi, PotentialSpec{}).components[0];
  const auto v = probability_current(phi).components[0];
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(r[i], 0.25 * c.hbar * c.hbar * k * k / (2 * c.mass), 1e-12);
    EXPECT_NEAR(J[i], 0.25 * std::pow(c.hbar, 3) * std::pow(k, 3) / (2 * c.mass * c.mass), 1e-12);
    EXPECT_NEAR(v[i], 0.25 * c.hbar * k / c.mass, 1e-12);
  }
}

TEST(Observables, CurrentFromPotentialUsesTheSchrodingerRate) {
  const Grid g = square(48, 7.0);
  const SpinorField phi = generic_spinor(g, odd_units());
  const PotentialSpec U = PotentialSpec::harmonic(0.4);
  const auto a = current_J(phi, U);
  const auto b = current_J(phi, time_derivative(phi, U));
  for (int ax = 0; ax < 2; ++ax)
    EXPECT_LT(rel_linf(a.components[static_cast<std::size_t>(ax)], b.components[static_cast<std::size_t>(ax)]),
              1e-13);
}

TEST(Observables, TmhFormMatchesTheLaplacianForm) {
  const Grid g = square(48, 7.0);
  const SpinorField phi = generic_spinor(g);
  for (const PotentialSpec& U : {PotentialSpec{}, PotentialSpec::harmonic(0.7)})
    EXPECT_LT(rel_linf(rho_tmh(phi, U).values, rho(phi, U).values), 1e-12);
}

TEST(Observables, EnergyContinuityHolds) {
  const Grid g = square(128, 10.0);
  const SpinorField phi = generic_spinor(g, odd_units());
  for (const PotentialSpec& U : {PotentialSpec{}, PotentialSpec::harmonic(0.5)}) {
    const SpinorField phidot = time_derivative(phi, U);
    const auto rate = rho_rate(phi, phidot, U);
    const auto div = divergence(current_J(phi, phidot)).values;
    std::vector<double> res(rate.size());
    for (std::size_t i = 0; i < res.size(); ++i) res[i] = rate[i] + div[i];
    EXPECT_LT(max_abs(res) / max_abs(div), 1e-8) << U.name();
  }
}

TEST(Observables, MagneticContinuityIsGaugeCovariant) {
  const PhysConstants c;
  const double B = 1.5;
  const Grid g({Axis{16, 0.0, 2.0 * std::numbers::pi, true}, Axis{256, -12.0, 12.0, true}});
  SpinorField phi(g, c);
  const std::array<PacketSpec, 3> parts{PacketSpec{LandauLevel{0, 1.0, 0.0, 0.5, B}},
                                       PacketSpec{LandauLevel{1, -1.0, 0.0, 0.5, B}},
                                       PacketSpec{LandauLevel{2, 2.0, 0.0, -0.5, B}}};
  const std::array<cplx, 3> amps{cplx{1.0}, cplx{0.3, 0.5}, cplx{-0.4, 0.2}};
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const SpinorField f = realize(parts[p], g, 0.0, c);
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t i = 0; i < g.size(); ++i) phi.comp[s][i] += amps[p] * f.comp[s][i];
  }
  const PotentialSpec U = PotentialSpec::magnetic(B);
  const auto rate = rho_rate(phi, time_derivative(phi, U), U);
  const auto div = divergence(current_J(phi, U)).values;
  std::vector<double> res(rate.size());
  for (std::size_t i = 0; i < res.size(); ++i) res[i] = rate[i] + div[i];
  EXPECT_GT(max_abs(div), 1e-2);
  EXPECT_LT(max_abs(res), 1e-10);
}

TEST(Observables, AlternativeDensityIsNonNegativeWithTheSameIntegral) {
  const Grid g = square(64, 8.0);
  const SpinorField phi = generic_spinor(g);
  const auto ra = rho_alt(phi);
  for (double v : ra.values) EXPECT_GE(v, 0.0);
  EXPECT_NEAR(integrate(ra), integrate(rho(phi)), 1e-10);
}

TEST(Observables, RotorCurrentDifferenceIsDivergenceFree) {
  const Grid g = square(128, 10.0);
  const SpinorField phi = generic_spinor(g);
  const PotentialSpec U = PotentialSpec::harmonic(0.3);
  const auto J = current_J(phi, U);
  auto D = current_JD(phi, U);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < g.size(); ++i) D.components[a][i] = J.components[a][i] - D.components[a][i];
  EXPECT_GT(max_abs(D.components[0]), 1e-3);
  EXPECT_LT(max_abs(divergence(D).values), 1e-9);
}

TEST(Observables, MadelungTermsAddUpToRho) {
  const Grid g = Grid::line(512, -20.0, 20.0, true);
  const PhysConstants c = odd_units();
  const SpinorField phi = realize(PacketSpec{GaussianPacket{1.1, 0.7}}, g, 0.4, c);
  const PotentialSpec U = PotentialSpec::harmonic(0.6);
  const auto m = madelung(phi, U);
  const auto total = m.total().values;
  const auto r = rho(phi, U).values;
  const auto mask = m.mask();
  double worst = 0.0, scale = max_abs(r);
  std::size_t used = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (mask[i] && phi.density()[i] > 1e-8) {
      worst = std::max(worst, std::abs(total[i] - r[i]));
      ++used;
    }
  EXPECT_GT(used, 64u);
  EXPECT_LT(worst / scale, 1e-8);
}

TEST(Observables, SpinDensityFormsAgree) {
  const Grid g({Axis{64, -8.0, 8.0, true}, Axis{64, -8.0, 8.0, true}, Axis{64, -8.0, 8.0, true}});
  const SpinorField phi = generic_spinor(g, odd_units());
  const auto a = rho_s(phi).values;
  const auto b = rho_s_cross(phi).values;
  EXPECT_GT(max_abs(b), 1e-3);
  EXPECT_LT(rel_linf(a, b), 1e-8);
  EXPECT_NEAR(integrate(g, a), 0.0, 1e-10);
}

TEST(Observables, RestSplitIdentity) {
  const Grid g({Axis{32, -6.0, 6.0, true}, Axis{32, -6.0, 6.0, true}, Axis{32, -6.0, 6.0, true}});
  PhysConstants c;
  c.c = 20.0;
  const SpinorField phi = generic_spinor(g, c);
  const auto rs = rest_split(phi);
  const double scale = c.mass * c.c * c.c * max_abs(phi.density());
  EXPECT_LT(max_abs(rs.identity_residual.values) / scale, 1e-12);
}

TEST(Observables, DiracDensityAndCurrentOfAnEigenRate) {
  PhysConstants c = odd_units();
  c.c = 3.0;
  const Grid g = Grid::line(16, 0.0, 1.0, true);
  BispinorField psi(g, c);
  for (std::size_t i = 0; i < g.size(); ++i) {
    psi.comp[0][i] = 1.0;
    psi.comp[3][i] = 1.0;
  }
  const double omega = 2.5;
  BispinorField rate = psi;
  for (auto& comp : rate.comp)
    for (auto& v : comp) v *= -kI * omega;
  const auto r = dirac_rho(psi, rate).values;
  const auto J = dirac_J(psi, rate).components[0];
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(r[i], 2.0 * c.hbar * omega, 1e-12);
    EXPECT_NEAR(J[i], 2.0 * c.hbar * c.c * omega, 1e-12);
  }
}

TEST(Observables, TimeReversalSquaresToMinusOne) {
  const Grid g = square(16, 3.0);
  const SpinorField phi = generic_spinor(g);
  const SpinorField tt = time_reverse(time_reverse(phi));
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LT(std::abs(tt.comp[s][i] + phi.comp[s][i]), 1e-15);
}
