#pragma once

#include <array>
#include <vector>

#include "edlab/field.hpp"
#include "edlab/potential.hpp"

namespace edlab {

/// rho = -hbar^2/(4m) ([Lap phi^dag] phi + phi^dag Lap phi) + U phi^dag phi.
/// With a magnetic potential the gauge-covariant form Re(phi^dag H phi) is used.
ScalarField rho(const SpinorField& phi, const PotentialSpec& U = {});

/// Re(phi^dag H phi), the symmetrized (TMH) form.
ScalarField rho_tmh(const SpinorField& phi, const PotentialSpec& U = {});

/// J = hbar^2/(2m) Re[phi^dag grad phidot - (grad phi^dag) phidot].
VectorField current_J(const SpinorField& phi, const SpinorField& phidot);
/// Same with phidot = -(i/hbar) H phi. A magnetic potential makes the x
/// derivatives gauge covariant.
VectorField current_J(const SpinorField& phi, const PotentialSpec& U);

/// Probability current hbar/m Im(phi^dag grad phi).
VectorField probability_current(const SpinorField& phi);

/// rho~ = hbar^2/(2m) |grad phi|^2 + U |phi|^2.
ScalarField rho_alt(const SpinorField& phi, const PotentialSpec& U = {});

/// Current paired with rho~ in the Dirac limit.
VectorField current_JD(const SpinorField& phi, const PotentialSpec& U = {});

struct MadelungComponent {
  ScalarField density;
  VectorField velocity;
  ScalarField kinetic;    ///< m v^2 |phi_s|^2 / 2
  ScalarField potential;  ///< U |phi_s|^2
  ScalarField quantum;    ///< -(hbar^2/2m) |phi_s| Lap |phi_s|
  std::vector<unsigned char> valid;  ///< 0 where |phi_s| <= threshold
};

struct MadelungDecomposition {
  std::array<MadelungComponent, 2> comp;
  double threshold = 1e-10;

  /// Sum of the three terms over both components.
  ScalarField total() const;
  /// True where every component with non-zero amplitude is above threshold.
  std::vector<unsigned char> mask() const;
};

MadelungDecomposition madelung(const SpinorField& phi, const PotentialSpec& U = {}, double threshold = 1e-10);

/// Upsilon = hbar/(4m) Re[phi^dag sigma x (P + |e| A) phi]; one component per grid axis.
VectorField upsilon(const SpinorField& phi, const PotentialSpec& U = {});

/// rho_s = div Upsilon (discrete divergence).
ScalarField rho_s(const SpinorField& phi, const PotentialSpec& U = {});

/// Cross-gradient form -(i hbar^2/4m) grad phi^dag . sigma x grad phi (no vector potential).
ScalarField rho_s_cross(const SpinorField& phi);

struct RestSplit {
  SpinorField chi;
  ScalarField n0;
  ScalarField rho_s;
  /// m c^2 (phi^dag phi + chi^dag chi) - m c^2 n0 - rho_s
  ScalarField identity_residual;
};

/// chi = -(i hbar / 2mc) (sigma . grad) phi; c is taken from phi.constants.
RestSplit rest_split(const SpinorField& phi);

/// psi = [phi; chi].
BispinorField assemble_bispinor(const SpinorField& phi);

/// varrho = -hbar Im(psi^dag psidot).
ScalarField dirac_rho(const BispinorField& psi, const BispinorField& psidot);
/// J_k = -hbar c Im(psi^dag alpha_k psidot).
VectorField dirac_J(const BispinorField& psi, const BispinorField& psidot);

/// i sigma_y phi^*: the time-reversed spinor.
SpinorField time_reverse(const SpinorField& phi);

}  // namespace edlab
