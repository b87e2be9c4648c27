#include "edlab/potential.hpp"

#include <cmath>

#include "edlab/error.hpp"

namespace edlab {

double Modulation::lambda(double t) const { return 1.0 + amplitude * std::sin(omega * t + phase); }
double Modulation::lambda_dot(double t) const { return amplitude * omega * std::cos(omega * t + phase); }

namespace {

std::vector<double> static_profile(const PotentialSpec& U, const Grid& g, const PhysConstants& c) {
  std::vector<double> u(g.size(), 0.0);
  if (const auto* h = std::get_if<HarmonicPotential>(&U.kind)) {
    const double k = 0.5 * c.mass * h->omega * h->omega;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto p = g.point(i);
      u[i] = k * (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    }
  } else if (const auto* t = std::get_if<TablePotential>(&U.kind)) {
    u = t->values.values;
  }
  return u;
}

}  // namespace

void PotentialSpec::validate(const Grid& g) const {
  if (const auto* t = std::get_if<TablePotential>(&kind)) {
    require(t->values.grid == g, "potential: table does not match the grid");
    for (double v : t->values.values) require(std::isfinite(v), "potential: non-finite table entry");
  }
  if (const auto* h = std::get_if<HarmonicPotential>(&kind)) require(h->omega > 0, "potential: omega must be positive");
  if (const auto* m = std::get_if<UniformMagnetic>(&kind)) {
    require(m->B > 0, "potential: B must be positive");
    require(g.dim() >= 2, "potential: magnetic field needs a 2D or 3D grid");
    require(!modulation, "potential: time-dependent magnetic fields are not supported");
  }
}

std::vector<double> PotentialSpec::sample(const Grid& g, const PhysConstants& c, double t) const {
  validate(g);
  auto u = static_profile(*this, g, c);
  if (modulation) {
    const double l = modulation->lambda(t);
    for (double& v : u) v *= l;
  }
  return u;
}

std::vector<double> PotentialSpec::sample_rate(const Grid& g, const PhysConstants& c, double t) const {
  validate(g);
  if (!modulation) return std::vector<double>(g.size(), 0.0);
  auto u = static_profile(*this, g, c);
  const double ld = modulation->lambda_dot(t);
  for (double& v : u) v *= ld;
  return u;
}

std::string PotentialSpec::name() const {
  struct {
    std::string operator()(const NoPotential&) const { return "none"; }
    std::string operator()(const HarmonicPotential&) const { return "harmonic"; }
    std::string operator()(const TablePotential&) const { return "table"; }
    std::string operator()(const UniformMagnetic&) const { return "uniform_magnetic"; }
  } visitor;
  return std::visit(visitor, kind);
}

}  // namespace edlab
