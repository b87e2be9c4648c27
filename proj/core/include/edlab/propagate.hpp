#pragma once

#include <string>
#include <vector>

#include "edlab/field.hpp"
#include "edlab/potential.hpp"

namespace edlab {

/// H phi at time phi.time. With a magnetic potential: gauge-covariant kinetic
/// term in the Landau gauge plus the Zeeman term (hbar omega_B / 2) sigma_z.
SpinorField apply_H(const SpinorField& phi, const PotentialSpec& U = {});

/// -(i/hbar) H phi.
SpinorField time_derivative(const SpinorField& phi, const PotentialSpec& U = {});

/// <phi|H|phi> by quadrature (not divided by the norm).
double mean_energy(const SpinorField& phi, const PotentialSpec& U = {});

/// Dirac Hamiltonian m c^2 beta + U - i hbar c alpha . grad.
BispinorField apply_dirac_H(const BispinorField& psi, const PotentialSpec& U = {});
BispinorField dirac_time_derivative(const BispinorField& psi, const PotentialSpec& U = {});

struct Trajectory {
  std::vector<SpinorField> snapshots;
  double dt = 0.0;                ///< integrator step
  std::size_t snapshot_stride = 1;  ///< steps between snapshots
  std::string scheme = "strang_split_step";
  std::vector<std::string> warnings;

  double snapshot_dt() const { return dt * static_cast<double>(snapshot_stride); }
  std::vector<double> times() const;
};

/// Strang split-step: half kick with U at the step midpoint, exact kinetic
/// drift in Fourier space, half kick. Requires an all-periodic grid.
Trajectory evolve(const SpinorField& phi0, const PotentialSpec& U, double dt, std::size_t n_steps,
                  std::size_t snapshot_stride = 1);

/// Kinetic phase hbar k_max^2 dt / (2m) of the drift step.
double max_kinetic_phase(const Grid& g, const PhysConstants& c, double dt);

}  // namespace edlab
