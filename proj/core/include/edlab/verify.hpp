#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "edlab/field.hpp"
#include "edlab/grid.hpp"
#include "edlab/potential.hpp"
#include "edlab/propagate.hpp"

namespace edlab {

/// Every pass/fail threshold used by the checks.
struct Tolerances {
  double conservation_abs = 1e-6;  ///< residual_L2 bound
  double conservation_rel = 1e-3;  ///< residual_L2 / ||rho_dot|| bound
  double work_term = 1e-5;
  double holography = 1e-6;
  double global_content = 1e-8;
  double symmetry = 1e-10;
  double limit_slope = 0.1;
  double oracle = 1e-8;
  double order_band = 0.2;

  /// "default" or "strict".
  static Tolerances profile(const std::string& name);
  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

nlohmann::json to_json(const Tolerances& t);
/// Overrides entries of `base`; unknown keys are rejected.
Tolerances tolerances_from_json(const nlohmann::json& j, Tolerances base = {});

struct SnapshotResidual {
  double time = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double rate_l2 = 0.0;  ///< ||d/dt density||
};

struct ConservationReport {
  std::string check;
  double residual_L2 = 0.0;    ///< max over snapshots of the spatial L2 norm
  double residual_Linf = 0.0;
  double rate_L2 = 0.0;        ///< max over snapshots of ||d/dt density||
  double relative = 0.0;       ///< residual_L2 / rate_L2
  double convergence_order = 0.0;  ///< NaN when the residual sits at round-off
  double global_content = 0.0;     ///< max |integral of the density| (rho_s check only)
  double tolerance = 0.0;
  std::vector<SnapshotResidual> per_snapshot;
  bool pass = false;

  nlohmann::json to_json() const;
};

/// rho_dot + div J - U_dot |phi|^2 over a trajectory. `include_work` = false
/// drops the work term (used to show that it matters). Driven runs are held
/// to `work_term` instead of `conservation_abs`.
ConservationReport check_energy_conservation(const Trajectory& traj, const PotentialSpec& U,
                                             const Tolerances& tol = {}, bool include_work = true);

/// rho_s_dot + div J_s with J_s = -d/dt Upsilon.
ConservationReport check_rho_s_conservation(const Trajectory& traj, const PotentialSpec& U = {},
                                            const Tolerances& tol = {});

struct HolographyResult {
  Box box;
  double volume_integral = 0.0;
  double surface_integral = 0.0;
  double gap = 0.0;
  bool pass = false;
};

struct HolographyReport {
  std::vector<HolographyResult> boxes;
  double whole_grid_content = 0.0;
  bool pass = false;
  nlohmann::json to_json() const;
};

HolographyReport check_holography(const SpinorField& phi, const PotentialSpec& U, const std::vector<Box>& boxes,
                                  const Tolerances& tol = {});

struct LimitScalingReport {
  std::vector<double> c_values;
  std::vector<double> residual_norms;
  double slope = 0.0;
  double intercept = 0.0;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// L2 norm of varrho - m c^2 (phi^dag phi + chi^dag chi) - rho for each c, with
/// a least-squares log-log slope (expected -2).
LimitScalingReport check_limit_scaling(const SpinorField& phi, const PotentialSpec& U,
                                       const std::vector<double>& c_values, const Tolerances& tol = {});

struct SymmetryReport {
  double time_reversal_gap = 0.0;
  double space_inversion_gap = 0.0;  ///< NaN when the grid is not symmetric
  bool pass = false;
  nlohmann::json to_json() const;
};

SymmetryReport check_symmetries(const SpinorField& phi, const Tolerances& tol = {});

/// Spatial L2 norm with the whole-grid quadrature.
double l2_norm(const Grid& g, const std::vector<double>& f);

/// Least-squares slope and intercept of y against x.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace edlab
