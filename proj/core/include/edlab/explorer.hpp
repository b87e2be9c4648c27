#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "edlab/constants.hpp"
#include "edlab/field.hpp"

namespace edlab {

/// Free Gaussian (2 pi sigma^2)^{-1/4} exp(-(x-x0)^2/(4 sigma^2) + i p0 (x-x0)/hbar) at t = 0.
struct GaussianComponent {
  cplx coeff{1.0};
  double x0 = 0.0;
  double p0 = 0.0;
  double sigma = 1.0;
};

struct SuperpositionSpec {
  std::vector<GaussianComponent> components;
  bool normalized = true;  ///< evaluate the state divided by its norm

  void validate() const;
  /// GaussianPacket{a, b} as a one-component superposition.
  static SuperpositionSpec from_gaussian(double a, double b, const PhysConstants& c = {});
};

nlohmann::json to_json(const SuperpositionSpec& s);
SuperpositionSpec superposition_from_json(const nlohmann::json& j);

/// Squared norm of the unnormalized sum (constant in time).
double superposition_norm2(const SuperpositionSpec& s, const PhysConstants& c = {});

cplx superposition_value(const SuperpositionSpec& s, double x, double t, const PhysConstants& c = {});

/// rho(x, t) for free motion.
double superposition_rho(const SuperpositionSpec& s, double x, double t, const PhysConstants& c = {});

/// rho(x, t) times a positive, point-dependent factor: keeps the exact sign
/// where rho itself underflows.
double superposition_rho_scaled(const SuperpositionSpec& s, double x, double t, const PhysConstants& c = {});

/// Grid realization (1D) of the superposition at time t.
SpinorField realize_superposition(const SuperpositionSpec& s, const Grid& g, double t, const PhysConstants& c = {});

struct Lattice {
  double x_lo = -16.0;
  double x_hi = 16.0;
  std::size_t nx = 401;
  double t_lo = -3.0;
  double t_hi = 3.0;
  std::size_t nt = 31;

  double dx() const { return (x_hi - x_lo) / static_cast<double>(nx - 1); }
  double dt() const { return nt > 1 ? (t_hi - t_lo) / static_cast<double>(nt - 1) : 0.0; }
  double x(std::size_t i) const { return x_lo + static_cast<double>(i) * dx(); }
  double t(std::size_t j) const { return t_lo + static_cast<double>(j) * dt(); }
};

nlohmann::json to_json(const Lattice& l);

struct NegativityRecord {
  SuperpositionSpec spec;
  double min_rho = 0.0;
  double argmin_x = 0.0;
  double argmin_t = 0.0;
  Lattice lattice;
  std::size_t budget_spent = 0;
  std::string search_space = "finite Gaussian superpositions";

  nlohmann::json to_json() const;
};

struct NegativityMap {
  ScalarField rho;  ///< axes (x, t)
  NegativityRecord record;
};

/// rho on the (x, t) lattice. Throws when a component is narrower than two lattice cells.
NegativityMap negativity_map(const SuperpositionSpec& s, const Lattice& lattice, const PhysConstants& c = {});

/// Minimum of rho over the lattice only (no field stored).
NegativityRecord lattice_minimum(const SuperpositionSpec& s, const Lattice& lattice, const PhysConstants& c = {});

/// Parabolic refinement in x and t around the lattice minimum.
NegativityRecord refine_minimum(const NegativityRecord& r, const PhysConstants& c = {});

/// True when rho(x, t) < 0 somewhere on the x lattice at time t (sign-exact).
bool negative_somewhere(const SuperpositionSpec& s, double t, double x_lo, double x_hi, std::size_t nx,
                        const PhysConstants& c = {});

/// Bisection for the time in [t_in, t_out] where negativity disappears;
/// negative_somewhere must be true at t_in and false at t_out.
double negativity_boundary(const SuperpositionSpec& s, double t_in, double t_out, double x_lo, double x_hi,
                           std::size_t nx, double tol, const PhysConstants& c = {});

struct SearchOptions {
  Lattice lattice;
  double sigma_min = 0.2;
  double sigma_max = 1.5;
  double p_max = 2.0;
  double x_max = 3.0;
  double coeff_max = 3.0;
  double initial_step = 0.5;
  double restart_size = 1e-7;
};

struct SearchResult {
  NegativityRecord best;
  bool reached_nonnegative = false;
  std::size_t evaluations = 0;
  std::size_t restarts = 0;
  std::vector<std::string> ledger;  ///< JSON lines, one per improvement
};

/// Nelder-Mead with random restarts maximizing the lattice minimum of rho over
/// N-component superpositions. Deterministic for fixed (N, budget, seed).
SearchResult conjecture_search(int N, std::size_t budget, std::uint64_t seed, const SearchOptions& opt = {},
                               const PhysConstants& c = {});

}  // namespace edlab
