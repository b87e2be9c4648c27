#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "edlab/constants.hpp"
#include "edlab/field.hpp"

namespace edlab {

/// lambda(t) = 1 + amplitude * sin(omega t + phase).
struct Modulation {
  double amplitude = 0.0;
  double omega = 1.0;
  double phase = 0.0;

  double lambda(double t) const;
  double lambda_dot(double t) const;
  friend bool operator==(const Modulation&, const Modulation&) = default;
};

struct NoPotential {
  friend bool operator==(const NoPotential&, const NoPotential&) = default;
};

/// U = m omega^2 |r|^2 / 2.
struct HarmonicPotential {
  double omega = 1.0;
  friend bool operator==(const HarmonicPotential&, const HarmonicPotential&) = default;
};

struct TablePotential {
  ScalarField values;
};

/// B along z, Landau gauge A = (-B y, 0, 0). Needs dim >= 2.
struct UniformMagnetic {
  double B = 1.0;
  friend bool operator==(const UniformMagnetic&, const UniformMagnetic&) = default;
};

struct PotentialSpec {
  std::variant<NoPotential, HarmonicPotential, TablePotential, UniformMagnetic> kind{NoPotential{}};
  std::optional<Modulation> modulation;

  static PotentialSpec none() { return {}; }
  static PotentialSpec harmonic(double omega) { return {HarmonicPotential{omega}, std::nullopt}; }
  static PotentialSpec magnetic(double B) { return {UniformMagnetic{B}, std::nullopt}; }

  /// Scalar U(r, t) on the grid (zero for the magnetic variant).
  std::vector<double> sample(const Grid& g, const PhysConstants& c, double t) const;
  /// dU/dt on the grid.
  std::vector<double> sample_rate(const Grid& g, const PhysConstants& c, double t) const;

  const UniformMagnetic* magnetic() const { return std::get_if<UniformMagnetic>(&kind); }
  bool is_none() const { return std::holds_alternative<NoPotential>(kind); }
  bool time_dependent() const { return modulation.has_value() && modulation->amplitude != 0.0; }
  std::string name() const;
  void validate(const Grid& g) const;
};

}  // namespace edlab
