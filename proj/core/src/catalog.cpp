#include "edlab/catalog.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>

#include "edlab/error.hpp"
#include "edlab/special.hpp"

namespace edlab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_dim(const Grid& g, bool ok, const std::string& what) {
  require(ok, "realize: " + what + " needs a different grid dimension (got " + std::to_string(g.dim()) + "D)");
}

double max_spacing(const Grid& g) {
  double h = 0.0;
  for (int a = 0; a < g.dim(); ++a) h = std::max(h, g.spacing(a));
  return h;
}

std::array<cplx, 2> landau_spin(double s) {
  return s > 0 ? std::array<cplx, 2>{cplx{1.0}, cplx{0.0}} : std::array<cplx, 2>{cplx{0.0}, cplx{1.0}};
}

}  // namespace

std::string PacketSpec::variant_name() const {
  return std::visit(overloaded{[](const PlaneWave&) { return std::string("plane_wave"); },
                               [](const GaussianPacket&) { return std::string("gaussian"); },
                               [](const AiryPacket&) { return std::string("airy"); },
                               [](const ScatteringState&) { return std::string("scattering"); },
                               [](const LandauLevel&) { return std::string("landau"); },
                               [](const OscillatorEigenstate&) { return std::string("ho_eigen"); }},
                    state);
}

void PacketSpec::validate() const {
  const double norm = std::norm(spin_ket[0]) + std::norm(spin_ket[1]);
  require(std::abs(norm - 1.0) <= 1e-12, "PacketSpec: spin_ket must be normalized");
  std::visit(overloaded{[](const PlaneWave& p) {
                          for (double k : p.k) require(std::isfinite(k), "plane_wave: non-finite k");
                        },
                        [](const GaussianPacket& p) {
                          require(p.a > 0 && std::isfinite(p.b), "gaussian: requires a > 0 and finite b");
                        },
                        [](const AiryPacket& p) { require(p.beta > 0, "airy: requires beta > 0"); },
                        [](const ScatteringState& p) {
                          require(p.k > 0 && std::isfinite(p.f), "scattering: requires k > 0 and finite f");
                        },
                        [](const LandauLevel& p) {
                          require(p.n >= 0, "landau: n must be >= 0");
                          require(p.B > 0, "landau: B must be positive");
                          require(std::abs(std::abs(p.s) - 0.5) < 1e-15, "landau: s must be +1/2 or -1/2");
                        },
                        [](const OscillatorEigenstate& p) {
                          require(p.n >= 0 && p.omega > 0, "ho_eigen: requires n >= 0 and omega > 0");
                        }},
             state);
}

PotentialSpec PacketSpec::natural_potential() const {
  if (const auto* h = std::get_if<OscillatorEigenstate>(&state)) return PotentialSpec::harmonic(h->omega);
  if (const auto* l = std::get_if<LandauLevel>(&state)) return PotentialSpec::magnetic(l->B);
  return PotentialSpec::none();
}

std::array<double, 3> spin_expectation(const std::array<cplx, 2>& ket) {
  const cplx ab = std::conj(ket[0]) * ket[1];
  return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(ket[0]) - std::norm(ket[1])};
}

cplx gaussian_wavefunction(double a, double b, double x, double t, const PhysConstants& c) {
  const double xi = x / (a * c.hbar);
  const double tau = t / (c.mass * a * a * c.hbar);
  const cplx w(1.0, tau);
  const cplx d = cplx(xi, -b);
  return std::exp(-0.5 * b * b - d * d / (2.0 * w)) / (std::pow(kPi, 0.25) * std::sqrt(a * c.hbar * w));
}

GaussianClosedForms gaussian_closed_forms(double a, double b, double xi, double tau, const PhysConstants& c) {
  const double m = c.mass;
  const double t2 = tau * tau;
  const double w = 1.0 + t2;
  GaussianClosedForms r;
  r.rho_over_density = ((t2 - 1.0) * (xi * xi - b * b) + 4.0 * b * tau * xi + t2 + 1.0) / (2.0 * m * a * a * w * w);
  r.v = (b + xi * tau) / (m * a * w);
  const double poly = 2.0 * tau * (t2 - 1.0) * xi * xi * xi + 2.0 * b * (5.0 * t2 - 1.0) * xi * xi +
                      2.0 * tau * (3.0 * w + b * b * (5.0 - t2)) * xi + 2.0 * b * (2.0 + (1.0 - t2) * (b * b + t2));
  r.J_over_density = poly / (4.0 * m * m * a * a * a * w * w * w);
  return r;
}

cplx airy_wavefunction(double beta, double x, double t, const PhysConstants& c) {
  const double m = c.mass;
  const double b3 = beta * beta * beta;
  const double xi_t = x - b3 * t * t / (4.0 * m * m);
  const double amp = special::airy_ai(beta * xi_t / std::cbrt(c.hbar * c.hbar));
  const double phase = t * b3 / (2.0 * m) * (xi_t + b3 * t * t / (12.0 * m * m)) / c.hbar;
  return amp * std::polar(1.0, phase);
}

double airy_energy_density(double beta, double x, double t, const PhysConstants& c) {
  const double m = c.mass;
  const double b3 = beta * beta * beta;
  const double T = b3 * t * t / (4.0 * m * m);
  const double xi_t = x - T;
  const double ai = special::airy_ai(beta * xi_t / std::cbrt(c.hbar * c.hbar));
  return b3 / (2.0 * m) * (T - xi_t) * ai * ai;
}

double airy_energy_peak(double beta, double t, const PhysConstants& c) {
  const double m = c.mass;
  const double T = beta * beta * beta * t * t / (4.0 * m * m);
  const double s = beta / std::cbrt(c.hbar * c.hbar);
  // rho ~ (T - xi) Ai(s xi)^2 is positive on (z_{k+1}, min(z_k, T)); the
  // rightmost such interval holds the first maximum from the right.
  int k = 1;
  while (special::airy_ai_zero(k) / s >= T) ++k;
  const double lo = special::airy_ai_zero(k) / s;
  const double hi = k == 1 ? T : std::min(T, special::airy_ai_zero(k - 1) / s);
  const double sign = special::airy_ai(s * 0.5 * (lo + hi)) > 0 ? 1.0 : -1.0;
  auto g = [&](double xi) {
    return sign * (2.0 * s * (T - xi) * special::airy_ai_prime(s * xi) - special::airy_ai(s * xi));
  };
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (a + b) + T;
}

double scattering_rho_s(double k, double f, const std::array<double, 3>& mu, const std::array<double, 3>& p,
                        const PhysConstants& c) {
  const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  require(r > 0, "scattering_rho_s: undefined at the origin");
  const double ph = k * p[2] - k * r;
  const double pref = -c.hbar * c.hbar * k * k * (mu[0] * p[1] - mu[1] * p[0]) * f / (2.0 * c.mass * r * r);
  return pref * (std::sin(ph) - std::cos(ph) / (k * r));
}

double scattering_sphere_content(double k, double f, const std::array<double, 3>& mu, double R, bool positive_part,
                                 const PhysConstants& c) {
  require(R > 0, "scattering_sphere_content: R must be positive");
  // Midpoint rule in (cos theta, phi); the azimuthal dependence is a single
  // harmonic, integrated exactly by any uniform rule with >= 3 points.
  const int n_u = std::max(2048, static_cast<int>(64 * k * R));
  const int n_phi = 128;
  const double du = 2.0 / n_u;
  const double dphi = 2.0 * kPi / n_phi;
  double sum = 0.0;
  for (int i = 0; i < n_u; ++i) {
    const double u = -1.0 + (i + 0.5) * du;
    const double st = std::sqrt(std::max(0.0, 1.0 - u * u));
    double ring = 0.0;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = (j + 0.5) * dphi;
      const double v = scattering_rho_s(k, f, mu, {R * st * std::cos(phi), R * st * std::sin(phi), R * u}, c);
      ring += positive_part ? std::max(v, 0.0) : v;
    }
    sum += ring;
  }
  return R * R * sum * du * dphi;
}

double landau_profile(int n, double k_x, double B, double y, const PhysConstants& c) {
  const double wB = c.charge * B / c.mass;
  const double y0 = c.hbar * k_x / (c.mass * wB);
  const double ell = std::sqrt(c.hbar / (c.mass * wB));
  return special::hermite_function(n, (y - y0) / ell) / std::sqrt(ell);
}

LandauClosedForms landau_closed_forms(int n, double k_x, double k_z, double s, double B, double y,
                                      const PhysConstants& c) {
  require(n >= 0 && B > 0, "landau_closed_forms: requires n >= 0 and B > 0");
  const double wB = c.charge * B / c.mass;
  const double y0 = c.hbar * k_x / (c.mass * wB);
  const double ell = std::sqrt(c.hbar / (c.mass * wB));
  const double u = (y - y0) / ell;
  const double p = special::hermite_function(n, u) / std::sqrt(ell);
  const double dp = special::hermite_function_derivative(n, u) / (ell * std::sqrt(ell));
  const double e = s * c.hbar * wB / 2.0;
  LandauClosedForms r;
  r.upsilon_y = e * p * p * (y0 - y);
  r.rho_s = e * (2.0 * (y0 - y) * p * dp - p * p);
  r.E_n = (n + 0.5 + s) * c.hbar * wB + c.hbar * c.hbar * k_z * k_z / (2.0 * c.mass);
  return r;
}

double stationary_energy(const PacketSpec& spec, const PhysConstants& c) {
  return std::visit(
      overloaded{[&](const PlaneWave& p) {
                   return c.hbar * c.hbar * (p.k[0] * p.k[0] + p.k[1] * p.k[1] + p.k[2] * p.k[2]) / (2.0 * c.mass);
                 },
                 [&](const ScatteringState& p) { return c.hbar * c.hbar * p.k * p.k / (2.0 * c.mass); },
                 [&](const LandauLevel& p) { return landau_closed_forms(p.n, p.k_x, p.k_z, p.s, p.B, 0.0, c).E_n; },
                 [&](const OscillatorEigenstate& p) { return (p.n + 0.5) * c.hbar * p.omega; },
                 [](const auto&) -> double { throw Error("stationary_energy: state is not stationary"); }},
      spec.state);
}

SpinorField realize(const PacketSpec& spec, const Grid& g, double t, const PhysConstants& c) {
  spec.validate();
  c.validate();
  std::vector<cplx> psi(g.size());
  std::array<cplx, 2> spin = spec.spin_ket;
  Normalization norm = Normalization::non_normalizable;

  std::visit(
      overloaded{
          [&](const PlaneWave& p) {
            for (int a = g.dim(); a < 3; ++a)
              require(p.k[static_cast<std::size_t>(a)] == 0.0, "realize: plane_wave k has components beyond the grid");
            const double w = stationary_energy(spec, c) / c.hbar;
            for (std::size_t i = 0; i < psi.size(); ++i) {
              const auto r = g.point(i);
              psi[i] = std::polar(1.0, p.k[0] * r[0] + p.k[1] * r[1] + p.k[2] * r[2] - w * t);
            }
          },
          [&](const GaussianPacket& p) {
            require_dim(g, g.dim() == 1, "gaussian");
            for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = gaussian_wavefunction(p.a, p.b, g.coord(0, i), t, c);
            norm = Normalization::normalized;
          },
          [&](const AiryPacket& p) {
            require_dim(g, g.dim() == 1, "airy");
            for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = airy_wavefunction(p.beta, g.coord(0, i), t, c);
          },
          [&](const ScatteringState& p) {
            require_dim(g, g.dim() == 3, "scattering");
            const double r_min = 2.0 * max_spacing(g);
            const cplx phase = std::polar(1.0, -stationary_energy(spec, c) * t / c.hbar);
            for (std::size_t i = 0; i < psi.size(); ++i) {
              const auto x = g.point(i);
              const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
              cplx v = std::polar(1.0, p.k * x[2]);
              if (r >= r_min)
                v += p.f * std::polar(1.0, p.k * r) / r;
              else
                require(p.carve, "realize: scattering grid has a node within 2h of the origin");
              psi[i] = v * phase;
            }
          },
          [&](const LandauLevel& p) {
            require_dim(g, g.dim() == 2 || g.dim() == 3, "landau");
            require(g.dim() == 3 || p.k_z == 0.0, "realize: landau with k_z != 0 needs a 3D grid");
            const double E = stationary_energy(spec, c);
            for (std::size_t i = 0; i < psi.size(); ++i) {
              const auto r = g.point(i);
              const double prof = landau_profile(p.n, p.k_x, p.B, r[1], c);
              psi[i] = prof * std::polar(1.0, p.k_x * r[0] + p.k_z * r[2] - E * t / c.hbar);
            }
            spin = landau_spin(p.s);
          },
          [&](const OscillatorEigenstate& p) {
            require_dim(g, g.dim() == 1, "ho_eigen");
            const double ell = std::sqrt(c.hbar / (c.mass * p.omega));
            const cplx phase = std::polar(1.0, -stationary_energy(spec, c) * t / c.hbar);
            for (std::size_t i = 0; i < psi.size(); ++i)
              psi[i] = special::hermite_function(p.n, g.coord(0, i) / ell) / std::sqrt(ell) * phase;
            norm = Normalization::normalized;
          }},
      spec.state);

  SpinorField f = make_spinor(g, psi, spin, c, t);
  f.norm = norm;
  return f;
}

}  // namespace edlab
