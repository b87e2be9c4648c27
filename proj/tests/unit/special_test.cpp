#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "edlab/special.hpp"

using namespace edlab;

namespace {

// Physicists' Hermite polynomials written out explicitly.
double hermite_poly(int n, double u) {
  switch (n) {
    case 0: return 1.0;
    case 1: return 2.0 * u;
    case 2: return 4.0 * u * u - 2.0;
    case 3: return 8.0 * u * u * u - 12.0 * u;
    case 4: return 16.0 * std::pow(u, 4) - 48.0 * u * u + 12.0;
    default: return NAN;
  }
}

// Maclaurin series of Ai from its two fundamental solutions.
double airy_series(double x) {
  const double c1 = 0.355028053887817239;
  const double c2 = 0.258819403792806798;
  double f = 1.0, g = x, tf = 1.0, tg = x;
  for (int k = 1; k < 60; ++k) {
    tf *= x * x * x / ((3.0 * k) * (3.0 * k - 1.0));
    tg *= x * x * x / ((3.0 * k + 1.0) * (3.0 * k));
    f += tf;
    g += tg;
  }
  return c1 * f - c2 * g;
}

}  // namespace

TEST(Hermite, MatchesExplicitPolynomials) {
  for (int n = 0; n <= 4; ++n)
    for (double u : {-3.1, -1.0, -0.2, 0.0, 0.7, 2.5}) {
      const double norm = 1.0 / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(std::numbers::pi));
      EXPECT_NEAR(special::hermite_function(n, u), norm * hermite_poly(n, u) * std::exp(-u * u / 2), 1e-14);
    }
}

TEST(Hermite, OrthonormalByQuadrature) {
  const int nmax = 30;
  const double h = 0.01;
  std::vector<std::vector<double>> table;
  for (double u = -14.0; u <= 14.0; u += h) {
    std::vector<double> row(nmax + 1);
    special::hermite_functions(nmax, u, row);
    table.push_back(row);
  }
  for (int m : {0, 5, 17, 30})
    for (int n : {0, 5, 17, 30}) {
      double s = 0.0;
      for (const auto& row : table) s += row[static_cast<std::size_t>(m)] * row[static_cast<std::size_t>(n)] * h;
      EXPECT_NEAR(s, m == n ? 1.0 : 0.0, 1e-10) << m << "," << n;
    }
}

TEST(Hermite, HighOrderStaysFiniteAndNormalized) {
  std::vector<double> out(201);
  special::hermite_functions(200, 25.0, out);
  for (double v : out) EXPECT_TRUE(std::isfinite(v));
  const double h = 0.01;
  double s = 0.0;
  for (double u = -30.0; u <= 30.0; u += h) s += std::pow(special::hermite_function(200, u), 2) * h;
  EXPECT_NEAR(s, 1.0, 1e-9);
}

TEST(Hermite, DerivativeMatchesFiniteDifference) {
  const double h = 1e-4;
  for (int n : {0, 1, 4, 9})
    for (double u : {-1.3, 0.4, 2.2}) {
      const double fd = (special::hermite_function(n, u + h) - special::hermite_function(n, u - h)) / (2 * h);
      EXPECT_NEAR(special::hermite_function_derivative(n, u), fd, 1e-7);
    }
}

TEST(Airy, MatchesPowerSeries) {
  for (double x = -4.0; x <= 3.0; x += 0.25) EXPECT_NEAR(special::airy_ai(x), airy_series(x), 1e-12) << x;
}

TEST(Airy, SatisfiesTheAiryEquation) {
  const double h = 1e-3;
  for (double x : {-6.0, -2.5, 0.0, 1.5, 4.0}) {
    const double d2 = (special::airy_ai_prime(x - 2 * h) - 8 * special::airy_ai_prime(x - h) +
                       8 * special::airy_ai_prime(x + h) - special::airy_ai_prime(x + 2 * h)) /
                      (12 * h);
    EXPECT_NEAR(d2, x * special::airy_ai(x), 1e-9);
  }
}

TEST(Airy, KnownZeros) {
  EXPECT_NEAR(special::airy_ai_zero(1), -2.338107410459767, 1e-13);
  EXPECT_NEAR(special::airy_ai_zero(2), -4.087949444130971, 1e-13);
  EXPECT_NEAR(special::airy_ai(special::airy_ai_zero(5)), 0.0, 1e-13);
}
