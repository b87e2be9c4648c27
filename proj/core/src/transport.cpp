#include "edlab/transport.hpp"

#include <cmath>
#include <cstdio>

#include "edlab/calculus.hpp"
#include "edlab/catalog.hpp"
#include "edlab/error.hpp"
#include "edlab/fft.hpp"
#include "edlab/observables.hpp"

namespace edlab {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Grid airy_window(double beta, double t, const PhysConstants& c, std::size_t n, double lo, double hi) {
  const double T = beta * beta * beta * t * t / (4.0 * c.mass * c.mass);
  return Grid::line(n, T + lo, T + hi, false);
}

}  // namespace

MomentumMoments momentum_moments(const SpinorField& phi, int axis) {
  phi.validate();
  const Grid& g = phi.grid;
  require(axis >= 0 && axis < g.dim(), "momentum_moments: axis out of range");
  const double hb = phi.constants.hbar;
  const Axis& ax = g.axis(axis);
  double w = 0, s1 = 0, s2 = 0, s3 = 0;

  if (g.all_periodic()) {
    for (const auto& comp : phi.comp) {
      std::vector<cplx> buf = comp;
      fft::transform_all(g, buf, fft::Direction::forward);
      for (std::size_t i = 0; i < buf.size(); ++i) {
        const std::size_t ki = g.axis_index(i, axis);
        const double p = hb * ax.wavenumber(ki);
        const bool nyquist = ax.n % 2 == 0 && ki == ax.n / 2;
        const double q = std::norm(buf[i]);
        w += q;
        s2 += p * p * q;
        if (!nyquist) {
          s1 += p * q;
          s3 += p * p * p * q;
        }
      }
    }
    require(w > 0, "momentum_moments: zero state");
    return {s1 / w, s2 / w, s3 / w};
  }

  std::vector<double> d0(g.size(), 0.0), d1(g.size(), 0.0), d2(g.size(), 0.0), d3(g.size(), 0.0);
  for (const auto& comp : phi.comp) {
    const auto f1 = derivative(g, comp, axis, 1);
    const auto f3 = derivative(g, comp, axis, 3);
    for (std::size_t i = 0; i < g.size(); ++i) {
      d0[i] += std::norm(comp[i]);
      d1[i] += (std::conj(comp[i]) * (-kI * hb) * f1[i]).real();
      d2[i] += hb * hb * std::norm(f1[i]);
      d3[i] += (std::conj(comp[i]) * (kI * hb * hb * hb) * f3[i]).real();
    }
  }
  const double n = integrate(g, d0);
  require(n > 0, "momentum_moments: zero state");
  return {integrate(g, d1) / n, integrate(g, d2) / n, integrate(g, d3) / n};
}

double v_cor(const SpinorField& phi) { return momentum_moments(phi).m1 / phi.constants.mass; }

double v_en(const SpinorField& phi) {
  const auto m = momentum_moments(phi);
  require(m.m2 > 0, "v_en: <P^2> vanishes");
  return m.m3 / (phi.constants.mass * m.m2);
}

double v_cor_from_current(const SpinorField& phi) {
  const VectorField j = probability_current(phi);
  return integrate(j.component(0)) / integrate(phi.grid, phi.density());
}

double v_en_from_current(const SpinorField& phi, const PotentialSpec& U) {
  const VectorField J = current_J(phi, U);
  const double e = integrate(rho(phi, U));
  require(e != 0.0, "v_en_from_current: total energy vanishes");
  return integrate(J.component(0)) / e;
}

double find_peak(const ScalarField& f, PeakKind kind, double significance) {
  require(f.grid.dim() == 1, "find_peak: needs a 1D field");
  const auto& v = f.values;
  const std::size_t n = v.size();
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));

  std::size_t i = n;
  if (kind == PeakKind::global) {
    i = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (v[k] > v[i]) i = k;
    require(i > 0 && i + 1 < n, "find_peak: maximum on the grid edge");
  } else {
    for (std::size_t k = n - 2; k >= 1; --k) {
      if (v[k] > v[k - 1] && v[k] >= v[k + 1] && v[k] > significance * vmax) {
        i = k;
        break;
      }
    }
    require(i < n, "find_peak: no local maximum found");
  }
  const double den = v[i - 1] - 2.0 * v[i] + v[i + 1];
  const double delta = den != 0.0 ? 0.5 * (v[i - 1] - v[i + 1]) / den : 0.0;
  return f.grid.coord(0, i) + delta * f.grid.spacing(0);
}

std::vector<double> differentiate(const std::vector<double>& t, const std::vector<double>& y) {
  require(t.size() == y.size() && t.size() >= 3, "differentiate: needs at least 3 samples");
  const std::size_t n = t.size();
  std::vector<double> d(n);
  auto three_point = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t at) {
    const double x = t[at];
    const double la = (2 * x - t[b] - t[c]) / ((t[a] - t[b]) * (t[a] - t[c]));
    const double lb = (2 * x - t[a] - t[c]) / ((t[b] - t[a]) * (t[b] - t[c]));
    const double lc = (2 * x - t[a] - t[b]) / ((t[c] - t[a]) * (t[c] - t[b]));
    return la * y[a] + lb * y[b] + lc * y[c];
  };
  d[0] = three_point(0, 1, 2, 0);
  for (std::size_t j = 1; j + 1 < n; ++j) d[j] = three_point(j - 1, j, j + 1, j);
  d[n - 1] = three_point(n - 3, n - 2, n - 1, n - 1);
  return d;
}

PeakSeries v_mp(const std::vector<ScalarField>& fields, PeakKind kind, double significance) {
  require(fields.size() >= 3, "v_mp: needs at least 3 snapshots");
  PeakSeries s;
  for (const auto& f : fields) {
    if (!s.times.empty()) require(f.time > s.times.back(), "v_mp: snapshot times must increase");
    s.times.push_back(f.time);
    s.positions.push_back(find_peak(f, kind, significance));
  }
  s.velocities = differentiate(s.times, s.positions);
  return s;
}

nlohmann::json TransportReport::to_json() const {
  return {{"v_cor", v_cor},
          {"v_en", v_en},
          {"moments", {{"P1", moments.m1}, {"P2", moments.m2}, {"P3", moments.m3}}},
          {"v_mp", {{"t", mp.times}, {"position", mp.positions}, {"velocity", mp.velocities}}}};
}

std::vector<Figure1Row> figure1_data(double a, double b, const PhysConstants& c, const std::vector<double>& times,
                                     std::size_t n_points, double half_width) {
  const Grid g = Grid::line(n_points, -half_width, half_width, true);
  PacketSpec spec{GaussianPacket{a, b}};
  std::vector<ScalarField> dens;
  std::vector<double> vc, ve;
  for (double t : times) {
    const SpinorField phi = realize(spec, g, t, c);
    vc.push_back(v_cor(phi));
    ve.push_back(v_en(phi));
    dens.push_back(rho(phi));
  }
  const PeakSeries mp = v_mp(dens, PeakKind::global);
  std::vector<Figure1Row> rows;
  for (std::size_t i = 0; i < times.size(); ++i) rows.push_back({times[i], vc[i], ve[i], mp.velocities[i]});
  return rows;
}

std::vector<Figure2Row> figure2_data(double beta, double t, const PhysConstants& c, std::size_t n_points,
                                     double xi_lo, double xi_hi) {
  const Grid g = airy_window(beta, t, c, n_points, xi_lo, xi_hi);
  const SpinorField phi = realize(PacketSpec{AiryPacket{beta}}, g, t, c);
  const ScalarField r = rho(phi);
  const double T = beta * beta * beta * t * t / (4.0 * c.mass * c.mass);
  std::vector<Figure2Row> rows;
  for (std::size_t i = 0; i < g.size(); ++i) rows.push_back({g.coord(0, i) - T, r[i]});
  return rows;
}

std::vector<Figure3Row> figure3_data(double beta, const PhysConstants& c, const std::vector<double>& times,
                                     std::size_t n_points, double xi_lo, double xi_hi) {
  std::vector<ScalarField> dens, energy;
  for (double t : times) {
    const Grid g = airy_window(beta, t, c, n_points, xi_lo, xi_hi);
    const SpinorField phi = realize(PacketSpec{AiryPacket{beta}}, g, t, c);
    dens.emplace_back(g, phi.density(), t);
    energy.push_back(rho(phi));
  }
  const PeakSeries cor = v_mp(dens, PeakKind::global);
  const PeakSeries en = v_mp(energy, PeakKind::first_from_right);
  std::vector<Figure3Row> rows;
  for (std::size_t i = 0; i < times.size(); ++i)
    rows.push_back({times[i], cor.velocities[i], en.velocities[i], en.velocities[i] - cor.velocities[i]});
  return rows;
}

std::string figure1_csv(const std::vector<Figure1Row>& rows) {
  std::string s = "t,v_cor,v_en,v_mp\n";
  for (const auto& r : rows) s += fmt(r.t) + ',' + fmt(r.v_cor) + ',' + fmt(r.v_en) + ',' + fmt(r.v_mp) + '\n';
  return s;
}

std::string figure2_csv(const std::vector<Figure2Row>& rows) {
  std::string s = "xi,rho\n";
  for (const auto& r : rows) s += fmt(r.xi) + ',' + fmt(r.rho) + '\n';
  return s;
}

std::string figure3_csv(const std::vector<Figure3Row>& rows) {
  std::string s = "t,v_cor,v_en,v_r\n";
  for (const auto& r : rows) s += fmt(r.t) + ',' + fmt(r.v_cor) + ',' + fmt(r.v_en) + ',' + fmt(r.v_r) + '\n';
  return s;
}

}  // namespace edlab
