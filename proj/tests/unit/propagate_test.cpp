#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "edlab/calculus.hpp"
#include "edlab/catalog.hpp"
#include "edlab/error.hpp"
#include "edlab/propagate.hpp"
#include "test_support.hpp"

using namespace edlab;

namespace {

double max_gap(const SpinorField& a, const SpinorField& b) {
  double m = 0.0;
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.comp[s][i] - b.comp[s][i]));
  return m;
}

// (phi_0 + phi_1) / sqrt 2 evolved exactly in the oscillator.
SpinorField oscillator_mix(const Grid& g, double t, const PhysConstants& c) {
  SpinorField out(g, c, t);
  for (int n = 0; n < 2; ++n) {
    const PacketSpec s{OscillatorEigenstate{n, 1.0}};
    const SpinorField f = realize(s, g, 0.0, c);
    const cplx ph = std::polar(1.0 / std::sqrt(2.0), -stationary_energy(s, c) * t / c.hbar);
    for (std::size_t i = 0; i < g.size(); ++i) out.comp[0][i] += ph * f.comp[0][i];
  }
  return out;
}

}  // namespace

TEST(Propagate, RequiresPeriodicGridsAndNoMagneticField) {
  const PhysConstants c;
  const Grid open = Grid::line(64, -5.0, 5.0, false);
  EXPECT_THROW(evolve(realize(PacketSpec{GaussianPacket{}}, open, 0.0), {}, 1e-3, 2), Error);
  const Grid g({Axis{8, 0.0, 1.0, true}, Axis{8, 0.0, 1.0, true}});
  EXPECT_THROW(evolve(SpinorField(g, c), PotentialSpec::magnetic(1.0), 1e-3, 2), Error);
}

TEST(Propagate, IsUnitary) {
  const Grid g({Axis{48, -8.0, 8.0, true}, Axis{48, -8.0, 8.0, true}});
  const SpinorField phi =
      make_spinor(g, edlab::testing::generic_packet(g), {cplx{0.6}, cplx{0.0, 0.8}}, PhysConstants{});
  const double n0 = integrate(g, phi.density());
  const auto traj = evolve(phi, PotentialSpec::harmonic(0.4), 5e-3, 100, 25);
  ASSERT_EQ(traj.snapshots.size(), 5u);
  for (const auto& s : traj.snapshots) EXPECT_NEAR(integrate(g, s.density()), n0, 1e-12 * n0);
  EXPECT_NEAR(traj.times().back(), 0.5, 1e-14);
}

TEST(Propagate, FreeGaussianMatchesTheClosedForm) {
  const PhysConstants c;
  const Grid g = Grid::line(1024, -40.0, 40.0, true);
  const PacketSpec spec{GaussianPacket{1.0, 1.0}};
  const auto traj = evolve(realize(spec, g, 0.0, c), {}, 0.01, 200, 200);
  EXPECT_LT(max_gap(traj.snapshots.back(), realize(spec, g, 2.0, c)), 1e-10);
}

TEST(Propagate, StrangSplittingIsSecondOrder) {
  const PhysConstants c;
  const Grid g = Grid::line(256, -16.0, 16.0, true);
  const PotentialSpec U = PotentialSpec::harmonic(1.0);
  const SpinorField exact = oscillator_mix(g, 1.0, c);
  auto err = [&](std::size_t steps) {
    const auto traj = evolve(oscillator_mix(g, 0.0, c), U, 1.0 / static_cast<double>(steps), steps, steps);
    return max_gap(traj.snapshots.back(), exact);
  };
  const double e1 = err(20), e2 = err(40), e3 = err(80);
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.1);
  EXPECT_NEAR(std::log2(e2 / e3), 2.0, 0.1);
}

TEST(Propagate, EigenstateAcquiresOnlyAPhase) {
  const PhysConstants c;
  const Grid g = Grid::line(256, -16.0, 16.0, true);
  const PacketSpec s{OscillatorEigenstate{2, 1.0}};
  const SpinorField phi = realize(s, g, 0.0, c);
  const auto traj = evolve(phi, s.natural_potential(), 1e-3, 1000, 1000);
  const cplx ph = std::polar(1.0, -stationary_energy(s, c) * 1.0);
  SpinorField expected = phi;
  for (auto& v : expected.comp[0]) v *= ph;
  EXPECT_LT(max_gap(traj.snapshots.back(), expected), 1e-6);
}

TEST(Propagate, MeanEnergyIsConservedForStaticPotentials) {
  const Grid g({Axis{48, -8.0, 8.0, true}, Axis{48, -8.0, 8.0, true}});
  const SpinorField phi =
      make_spinor(g, edlab::testing::generic_packet(g), {cplx{1.0}, cplx{0.0}}, PhysConstants{});
  const PotentialSpec U = PotentialSpec::harmonic(0.5);
  const auto traj = evolve(phi, U, 1e-3, 400, 100);
  const double E0 = mean_energy(phi, U);
  for (const auto& s : traj.snapshots) EXPECT_NEAR(mean_energy(s, U), E0, 1e-5 * std::abs(E0));
}

TEST(Propagate, HamiltonianIsHermitian) {
  const Grid g({Axis{32, -6.0, 6.0, true}, Axis{32, -6.0, 6.0, true}});
  const PhysConstants c;
  const SpinorField a = make_spinor(g, edlab::testing::generic_packet(g), {cplx{0.6}, cplx{0.0, 0.8}}, c);
  const SpinorField b = make_spinor(g, edlab::testing::generic_packet(g, 0.9), {cplx{0.0, 1.0}, cplx{0.3}}, c);
  for (const PotentialSpec& U : {PotentialSpec::harmonic(0.8), PotentialSpec::magnetic(0.7)}) {
    const SpinorField Ha = apply_H(a, U), Hb = apply_H(b, U);
    cplx lhs = 0.0, rhs = 0.0;
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t i = 0; i < g.size(); ++i) {
        lhs += std::conj(a.comp[s][i]) * Hb.comp[s][i];
        rhs += std::conj(Ha.comp[s][i]) * b.comp[s][i];
      }
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(lhs)) << U.name();
  }
}

TEST(Propagate, KineticPhase) {
  PhysConstants c;
  c.hbar = 2.0;
  c.mass = 0.5;
  const Grid g = Grid::line(64, 0.0, 2.0 * std::numbers::pi, true);
  EXPECT_NEAR(max_kinetic_phase(g, c, 0.01), 2.0 * 32.0 * 32.0 * 0.01 / 1.0, 1e-12);
}
