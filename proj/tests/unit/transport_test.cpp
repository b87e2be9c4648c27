#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "edlab/catalog.hpp"
#include "edlab/error.hpp"
#include "edlab/transport.hpp"

using namespace edlab;

namespace {

ScalarField sampled(const Grid& g, const std::function<double(double)>& f, double t = 0.0) {
  ScalarField out(g, t);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f(g.coord(0, i));
  return out;
}

}  // namespace

TEST(Transport, GaussianMomentsMatchTheAnalyticValues) {
  const Grid g = Grid::line(2048, -60.0, 60.0, true);
  for (double b : {0.0, 0.5, -1.2})
    for (double a : {0.8, 1.5}) {
      const SpinorField phi = realize(PacketSpec{GaussianPacket{a, b}}, g, 0.7);
      const double p0 = b / a, w = 1.0 / (2.0 * a * a);
      const auto m = momentum_moments(phi);
      EXPECT_NEAR(m.m1, p0, 1e-10);
      EXPECT_NEAR(m.m2, p0 * p0 + w, 1e-10);
      EXPECT_NEAR(m.m3, p0 * p0 * p0 + 3.0 * p0 * w, 1e-10);
      EXPECT_NEAR(v_cor(phi), p0, 1e-10);
      EXPECT_NEAR(v_en(phi), m.m3 / m.m2, 1e-12);
      EXPECT_NEAR(v_cor_from_current(phi), v_cor(phi), 1e-8);
      EXPECT_NEAR(v_en_from_current(phi), v_en(phi), 1e-8);
    }
}

TEST(Transport, MomentsOnNonPeriodicAxesAgree) {
  const Grid open = Grid::line(4001, -40.0, 40.0, false);
  const SpinorField phi = realize(PacketSpec{GaussianPacket{1.0, 0.8}}, open, 0.3);
  const auto m = momentum_moments(phi);
  EXPECT_NEAR(m.m1, 0.8, 1e-6);
  EXPECT_NEAR(m.m2, 0.64 + 0.5, 1e-6);
}

TEST(FindPeak, ParabolaIsRecoveredExactly) {
  const Grid g = Grid::line(41, -2.0, 2.0, false);
  const auto f = sampled(g, [](double x) { return 3.0 - (x - 0.237) * (x - 0.237); });
  EXPECT_NEAR(find_peak(f, PeakKind::global), 0.237, 1e-13);
}

TEST(FindPeak, TiesResolveToTheSmallerCoordinate) {
  const Grid g = Grid::line(101, -5.0, 5.0, false);
  const auto f = sampled(g, [](double x) { return std::exp(-(x - 2) * (x - 2)) + std::exp(-(x + 2) * (x + 2)); });
  EXPECT_NEAR(find_peak(f, PeakKind::global), -2.0, 1e-3);
  EXPECT_NEAR(find_peak(f, PeakKind::first_from_right), 2.0, 1e-3);
}

TEST(FindPeak, FirstFromRightIgnoresInsignificantBumps) {
  const Grid g = Grid::line(401, -10.0, 10.0, false);
  const auto f = sampled(g, [](double x) {
    return std::exp(-(x + 3) * (x + 3)) + 0.5 * std::exp(-(x - 1) * (x - 1)) + 1e-5 * std::exp(-(x - 6) * (x - 6));
  });
  EXPECT_NEAR(find_peak(f, PeakKind::first_from_right), 1.0, 1e-3);
  EXPECT_NEAR(find_peak(f, PeakKind::first_from_right, 1e-7), 6.0, 1e-3);
}

TEST(FindPeak, EdgePeaksThrow) {
  const Grid g = Grid::line(21, 0.0, 1.0, false);
  EXPECT_THROW(find_peak(sampled(g, [](double x) { return x; }), PeakKind::global), Error);
  EXPECT_THROW(find_peak(sampled(g, [](double x) { return x; }), PeakKind::first_from_right), Error);
}

TEST(Differentiate, ExactForQuadratics) {
  std::vector<double> t, y;
  for (int i = 0; i < 7; ++i) {
    t.push_back(0.3 * i);
    y.push_back(2.0 * t.back() * t.back() - t.back() + 4.0);
  }
  const auto d = differentiate(t, y);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(d[i], 4.0 * t[i] - 1.0, 1e-12);
  EXPECT_THROW(differentiate({0.0, 1.0}, {0.0, 1.0}), Error);
}

TEST(PeakVelocity, FollowsAMovingBump) {
  std::vector<ScalarField> fields;
  for (int j = 0; j < 6; ++j) {
    const double t = 0.5 * j;
    const Grid g = Grid::line(801, -10.0 + 0.7 * t, 10.0 + 0.7 * t, false);
    fields.push_back(sampled(g, [&](double x) { return std::exp(-(x - 0.7 * t - 0.1) * (x - 0.7 * t - 0.1)); }, t));
  }
  const auto mp = v_mp(fields, PeakKind::global);
  ASSERT_EQ(mp.velocities.size(), 6u);
  for (double v : mp.velocities) EXPECT_NEAR(v, 0.7, 1e-4);
}

TEST(Figure1, GaussianVelocitiesMatchTheirClosedForms) {
  PhysConstants c;
  c.mass = 0.5;
  const double a = 1.0 / std::sqrt(2.0), b = 1.0 / std::sqrt(8.0);
  const auto rows = figure1_data(a, b, c, {0.0, 1.0, 2.0});
  const double m1 = b / a, w = 1.0 / (2.0 * a * a);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.v_cor, m1 / c.mass, 1e-8);
    EXPECT_NEAR(r.v_en, (m1 * m1 * m1 + 3 * m1 * w) / (c.mass * (m1 * m1 + w)), 1e-8);
    EXPECT_TRUE(std::isfinite(r.v_mp));
  }
  EXPECT_NE(figure1_csv(rows).find("v_cor"), std::string::npos);
}
