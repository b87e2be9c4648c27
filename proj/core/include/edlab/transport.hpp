#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "edlab/field.hpp"
#include "edlab/potential.hpp"

namespace edlab {

/// <P^n>, n = 1..3, along `axis`, normalized by the state's norm.
struct MomentumMoments {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
};

/// Spectral on periodic axes; derivative-based otherwise.
MomentumMoments momentum_moments(const SpinorField& phi, int axis = 0);

double v_cor(const SpinorField& phi);
double v_en(const SpinorField& phi);

/// integral of the probability current / norm.
double v_cor_from_current(const SpinorField& phi);
/// integral of J / integral of rho.
double v_en_from_current(const SpinorField& phi, const PotentialSpec& U = {});

enum class PeakKind {
  global,            ///< global maximum
  first_from_right,  ///< rightmost local maximum above `significance * max|f|`
};

/// Peak coordinate of a 1D field, refined by 3-point parabolic interpolation.
/// Ties resolve toward the smaller coordinate. Throws when the peak sits on the
/// grid edge or no local maximum exists.
double find_peak(const ScalarField& f, PeakKind kind, double significance = 1e-3);

struct PeakSeries {
  std::vector<double> times;
  std::vector<double> positions;
  std::vector<double> velocities;
};

/// Peak path over snapshots (each may carry its own grid) and its time
/// derivative by 3-point differences.
PeakSeries v_mp(const std::vector<ScalarField>& fields, PeakKind kind, double significance = 1e-3);

/// Three-point derivative of samples y(t) at every node (centered inside, one-sided at the ends).
std::vector<double> differentiate(const std::vector<double>& t, const std::vector<double>& y);

struct TransportReport {
  double v_cor = 0.0;
  double v_en = 0.0;
  MomentumMoments moments;
  PeakSeries mp;
  nlohmann::json to_json() const;
};

struct Figure1Row {
  double t, v_cor, v_en, v_mp;
};
struct Figure2Row {
  double xi, rho;
};
struct Figure3Row {
  double t, v_cor, v_en, v_r;
};

/// Gaussian packet: moment velocities and the energy-density peak velocity
/// at each time (numeric fields on a periodic grid).
std::vector<Figure1Row> figure1_data(double a, double b, const PhysConstants& c, const std::vector<double>& times,
                                     std::size_t n_points = 2048, double half_width = 60.0);

/// Airy energy density against xi_t on the window [xi_lo, xi_hi].
std::vector<Figure2Row> figure2_data(double beta, double t, const PhysConstants& c, std::size_t n_points = 4096,
                                     double xi_lo = -40.0, double xi_hi = 10.0);

/// Airy peak velocities on windows moving with the front.
std::vector<Figure3Row> figure3_data(double beta, const PhysConstants& c, const std::vector<double>& times,
                                     std::size_t n_points = 4096, double xi_lo = -40.0, double xi_hi = 10.0);

std::string figure1_csv(const std::vector<Figure1Row>& rows);
std::string figure2_csv(const std::vector<Figure2Row>& rows);
std::string figure3_csv(const std::vector<Figure3Row>& rows);

}  // namespace edlab
