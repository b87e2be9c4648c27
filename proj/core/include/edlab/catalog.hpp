#pragma once

#include <array>
#include <string>
#include <variant>

#include "edlab/constants.hpp"
#include "edlab/field.hpp"
#include "edlab/potential.hpp"

namespace edlab {

struct PlaneWave {
  std::array<double, 3> k{};
};

/// Momentum-space Gaussian with width parameter a and mean momentum b/a.
struct GaussianPacket {
  double a = 1.0;
  double b = 0.0;
};

struct AiryPacket {
  double beta = 1.0;
};

/// e^{ikz} + f e^{ikr}/r. Nodes with r < 2h keep only the incident wave
/// when `carve` is set; otherwise a node at r < 2h is an error.
struct ScatteringState {
  double k = 1.0;
  double f = 1.0;
  bool carve = true;
};

/// Landau level in the gauge A = (-B y, 0, 0); s = +1/2 is spin up.
struct LandauLevel {
  int n = 0;
  double k_x = 0.0;
  double k_z = 0.0;
  double s = 0.5;
  double B = 1.0;
};

struct OscillatorEigenstate {
  int n = 0;
  double omega = 1.0;
};

using PacketVariant =
    std::variant<PlaneWave, GaussianPacket, AiryPacket, ScatteringState, LandauLevel, OscillatorEigenstate>;

struct PacketSpec {
  PacketVariant state{GaussianPacket{}};
  std::array<cplx, 2> spin_ket{cplx{1.0}, cplx{0.0}};

  std::string variant_name() const;
  void validate() const;
  /// Potential under which the state is an exact solution.
  PotentialSpec natural_potential() const;
};

/// mu = <s|sigma|s>.
std::array<double, 3> spin_expectation(const std::array<cplx, 2>& ket);

/// Closed-form wavefunction of `spec` sampled on `g` at time t.
SpinorField realize(const PacketSpec& spec, const Grid& g, double t, const PhysConstants& c = {});

/// Exact energy of stationary states (oscillator, Landau, plane wave, scattering).
double stationary_energy(const PacketSpec& spec, const PhysConstants& c = {});

struct GaussianClosedForms {
  double rho_over_density = 0.0;
  double v = 0.0;
  double J_over_density = 0.0;
};

/// Gaussian closed forms at dimensionless (xi, tau) = (x/(a hbar), t/(m a^2 hbar)).
GaussianClosedForms gaussian_closed_forms(double a, double b, double xi, double tau, const PhysConstants& c = {});

/// Gaussian wavefunction value at (x, t).
cplx gaussian_wavefunction(double a, double b, double x, double t, const PhysConstants& c = {});

double airy_energy_density(double beta, double x, double t, const PhysConstants& c = {});
cplx airy_wavefunction(double beta, double x, double t, const PhysConstants& c = {});

/// Position x of the first-from-right local maximum of the Airy energy density at time t.
double airy_energy_peak(double beta, double t, const PhysConstants& c = {});

/// Scattering rho_s at `point` (must not be the origin).
double scattering_rho_s(double k, double f, const std::array<double, 3>& mu, const std::array<double, 3>& point,
                        const PhysConstants& c = {});

/// R^2 times the integral of rho_s over the sphere of radius R: the full sphere
/// when `positive_part` is false, otherwise only where rho_s > 0.
double scattering_sphere_content(double k, double f, const std::array<double, 3>& mu, double R, bool positive_part,
                                 const PhysConstants& c = {});

struct LandauClosedForms {
  double upsilon_y = 0.0;
  double rho_s = 0.0;
  double E_n = 0.0;
};

LandauClosedForms landau_closed_forms(int n, double k_x, double k_z, double s, double B, double y,
                                      const PhysConstants& c = {});

/// Normalized oscillator profile phi_n(y) of the Landau problem (centered at y0).
double landau_profile(int n, double k_x, double B, double y, const PhysConstants& c = {});

}  // namespace edlab
