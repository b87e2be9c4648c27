#pragma once

#include <array>
#include <string>
#include <vector>

#include "edlab/constants.hpp"
#include "edlab/grid.hpp"

namespace edlab {

enum class Normalization {
  normalized,        ///< integral of phi^dagger phi is 1
  unnormalized,      ///< square-integrable, scale arbitrary
  non_normalizable,  ///< window of a plane-wave-like state; integrals are per-window only
};

struct ScalarField {
  Grid grid;
  std::vector<double> values;
  double time = 0.0;

  ScalarField() = default;
  explicit ScalarField(Grid g, double t = 0.0) : grid(std::move(g)), values(grid.size(), 0.0), time(t) {}
  ScalarField(Grid g, std::vector<double> v, double t = 0.0);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
};

/// One real component per grid axis.
struct VectorField {
  Grid grid;
  std::vector<std::vector<double>> components;
  double time = 0.0;

  VectorField() = default;
  explicit VectorField(Grid g, double t = 0.0);

  int dim() const { return static_cast<int>(components.size()); }
  ScalarField component(int a) const { return ScalarField(grid, components.at(static_cast<std::size_t>(a)), time); }
};

/// Two-component Pauli spinor sampled on a grid. Each component is one
/// contiguous block of complex amplitudes.
struct SpinorField {
  Grid grid;
  std::array<std::vector<cplx>, 2> comp;
  double time = 0.0;
  PhysConstants constants{};
  Normalization norm = Normalization::unnormalized;

  SpinorField() = default;
  SpinorField(Grid g, PhysConstants c, double t = 0.0);

  std::size_t size() const { return grid.size(); }
  /// phi^dagger phi per point
  std::vector<double> density() const;
  void validate() const;
};

/// Four-component Dirac bispinor; components 0,1 upper and 2,3 lower.
struct BispinorField {
  Grid grid;
  std::array<std::vector<cplx>, 4> comp;
  double time = 0.0;
  PhysConstants constants{};

  BispinorField() = default;
  BispinorField(Grid g, PhysConstants c, double t = 0.0);

  std::vector<double> density() const;
  void validate() const;
};

/// Builds a spinor |s> (x) psi(r) from a scalar wavefunction sampled on the grid.
SpinorField make_spinor(const Grid& g, const std::vector<cplx>& psi, const std::array<cplx, 2>& spin,
                        const PhysConstants& c, double t = 0.0);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace edlab
