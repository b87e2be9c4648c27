#include "edlab/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "edlab/error.hpp"
#include "edlab/fft.hpp"

namespace edlab {
namespace detail {

std::vector<double> fornberg_weights(double z, std::span<const double> x, int order) {
  const std::size_t n = x.size();
  const auto m = static_cast<std::size_t>(order);
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

}  // namespace detail

namespace {

struct Stencil {
  std::size_t start = 0;
  std::vector<double> weights;
};

// Fourth-order stencils for every node of a non-periodic axis of length n,
// in units of the grid spacing.
std::vector<Stencil> fd_stencils(std::size_t n, int order) {
  const std::size_t half = order == 3 ? 3 : 2;
  const std::size_t edge_width = static_cast<std::size_t>(order) + 4;
  std::vector<Stencil> table(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t start = 0;
    std::size_t width = 0;
    if (i >= half && i + half < n) {
      start = i - half;
      width = 2 * half + 1;
    } else {
      width = edge_width;
      start = i < half ? 0 : n - width;
    }
    std::vector<double> nodes(width);
    for (std::size_t j = 0; j < width; ++j) nodes[j] = static_cast<double>(start + j);
    table[i] = {start, detail::fornberg_weights(static_cast<double>(i), nodes, order)};
  }
  return table;
}

template <class T>
std::vector<T> fd_derivative(const Grid& g, std::span<const T> f, int axis, int order) {
  const Axis& ax = g.axis(axis);
  const std::size_t n = ax.n;
  const std::size_t stride = g.stride(axis);
  const std::size_t outer = g.size() / (n * stride);
  const auto table = fd_stencils(n, order);
  const double scale = 1.0 / std::pow(ax.spacing(), order);

  std::vector<T> out(g.size());
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < stride; ++in) {
      const std::size_t base = o * n * stride + in;
      for (std::size_t i = 0; i < n; ++i) {
        const Stencil& s = table[i];
        T acc{};
        for (std::size_t j = 0; j < s.weights.size(); ++j) acc += s.weights[j] * f[base + (s.start + j) * stride];
        out[base + i * stride] = acc * scale;
      }
    }
  }
  return out;
}

std::vector<cplx> spectral_derivative(const Grid& g, std::span<const cplx> f, int axis, int order) {
  std::vector<cplx> buf(f.begin(), f.end());
  fft::transform_axis(g, axis, buf, fft::Direction::forward);
  const Axis& ax = g.axis(axis);
  const std::size_t n = ax.n;
  std::vector<cplx> mult(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = ax.wavenumber(i);
    cplx m = 1.0;
    for (int p = 0; p < order; ++p) m *= cplx(0.0, k);
    if (order % 2 == 1 && n % 2 == 0 && i == n / 2) m = 0.0;
    mult[i] = m / static_cast<double>(n);
  }
  for (std::size_t j = 0; j < buf.size(); ++j) buf[j] *= mult[g.axis_index(j, axis)];
  fft::transform_axis(g, axis, buf, fft::Direction::backward);
  return buf;
}

template <class T>
void require_finite(std::span<const T> f) {
  for (const auto& v : f) {
    if constexpr (std::is_same_v<T, cplx>)
      require(std::isfinite(v.real()) && std::isfinite(v.imag()), "derivative: non-finite input");
    else
      require(std::isfinite(v), "derivative: non-finite input");
  }
}

void check_args(const Grid& g, std::size_t size, int axis, int order) {
  require(axis >= 0 && axis < g.dim(), "derivative: axis " + std::to_string(axis) + " out of range");
  require(order >= 1 && order <= 3, "derivative: order must be 1, 2 or 3");
  require(size == g.size(), "derivative: value count does not match grid");
}

}  // namespace

std::vector<cplx> derivative(const Grid& g, std::span<const cplx> f, int axis, int order) {
  check_args(g, f.size(), axis, order);
  require_finite(f);
  if (g.axis(axis).periodic) return spectral_derivative(g, f, axis, order);
  return fd_derivative<cplx>(g, f, axis, order);
}

std::vector<double> derivative(const Grid& g, std::span<const double> f, int axis, int order) {
  check_args(g, f.size(), axis, order);
  require_finite(f);
  if (!g.axis(axis).periodic) return fd_derivative<double>(g, f, axis, order);
  std::vector<cplx> z(f.begin(), f.end());
  const auto dz = spectral_derivative(g, z, axis, order);
  std::vector<double> out(dz.size());
  std::transform(dz.begin(), dz.end(), out.begin(), [](const cplx& c) { return c.real(); });
  return out;
}

ScalarField derivative(const ScalarField& f, int axis, int order) {
  return ScalarField(f.grid, derivative(f.grid, std::span<const double>(f.values), axis, order), f.time);
}

SpinorField derivative(const SpinorField& f, int axis, int order) {
  SpinorField out = f;
  for (std::size_t s = 0; s < 2; ++s) out.comp[s] = derivative(f.grid, std::span<const cplx>(f.comp[s]), axis, order);
  out.norm = Normalization::unnormalized;
  return out;
}

std::vector<cplx> laplacian(const Grid& g, std::span<const cplx> f) {
  std::vector<cplx> out(g.size(), cplx{});
  for (int a = 0; a < g.dim(); ++a) {
    const auto d2 = derivative(g, f, a, 2);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += d2[i];
  }
  return out;
}

ScalarField divergence(const VectorField& v) {
  require(v.dim() == v.grid.dim(), "divergence: component count must equal grid dimension");
  ScalarField out(v.grid, v.time);
  for (int a = 0; a < v.grid.dim(); ++a) {
    const auto d = derivative(v.grid, std::span<const double>(v.components[static_cast<std::size_t>(a)]), a, 1);
    for (std::size_t i = 0; i < d.size(); ++i) out.values[i] += d[i];
  }
  return out;
}

double integrate(const Grid& g, std::span<const double> f) {
  require(f.size() == g.size(), "integrate: value count does not match grid");
  std::array<std::vector<double>, 3> w;
  for (int a = 0; a < g.dim(); ++a) {
    const Axis& ax = g.axis(a);
    auto& wa = w[static_cast<std::size_t>(a)];
    wa.assign(ax.n, ax.spacing());
    if (!ax.periodic) {
      wa.front() *= 0.5;
      wa.back() *= 0.5;
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double wi = 1.0;
    for (int a = 0; a < g.dim(); ++a) wi *= w[static_cast<std::size_t>(a)][g.axis_index(i, a)];
    sum += wi * f[i];
  }
  return sum;
}

double integrate(const ScalarField& f) { return integrate(f.grid, f.values); }

double integrate(const ScalarField& f, const Box& region) {
  const Grid& g = f.grid;
  const IndexBox ib = snap(g, region);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool inside = true;
    for (int a = 0; a < g.dim() && inside; ++a) {
      const auto k = g.axis_index(i, a);
      inside = k >= ib.first[static_cast<std::size_t>(a)] && k <= ib.last[static_cast<std::size_t>(a)];
    }
    if (inside) sum += f.values[i];
  }
  return sum * g.cell_volume();
}

std::vector<double> face_values(const Grid& g, std::span<const double> f, int axis) {
  require(f.size() == g.size(), "face_values: value count does not match grid");
  const Axis& ax = g.axis(axis);
  const std::size_t n = ax.n;
  const std::size_t stride = g.stride(axis);
  if (!ax.periodic) {
    std::vector<double> out(g.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = 0; j < g.size(); ++j) {
      const std::size_t i = g.axis_index(j, axis);
      if (i < 1 || i + 2 >= n) continue;
      out[j] = (-f[j - stride] + 7.0 * f[j] + 7.0 * f[j + stride] - f[j + 2 * stride]) / 12.0;
    }
    return out;
  }
  // Spectral reconstruction F with F(i+1/2) - F(i-1/2) = h * (D f)_i.
  std::vector<cplx> buf(f.begin(), f.end());
  fft::transform_axis(g, axis, buf, fft::Direction::forward);
  const double h = ax.spacing();
  std::vector<cplx> mult(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = ax.wavenumber(i);
    const double s = 0.5 * k * h;
    cplx m = std::abs(s) < 1e-300 ? cplx(1.0) : (s / std::sin(s)) * std::polar(1.0, s);
    if (n % 2 == 0 && i == n / 2) m = 0.0;
    mult[i] = m / static_cast<double>(n);
  }
  for (std::size_t j = 0; j < buf.size(); ++j) buf[j] *= mult[g.axis_index(j, axis)];
  fft::transform_axis(g, axis, buf, fft::Direction::backward);
  std::vector<double> out(buf.size());
  for (std::size_t j = 0; j < buf.size(); ++j) out[j] = buf[j].real();
  return out;
}

double surface_integral(const VectorField& v, const Box& box) {
  const Grid& g = v.grid;
  require(v.dim() == g.dim(), "surface_integral: component count must equal grid dimension");
  const IndexBox ib = snap(g, box);
  double total = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const Axis& ax = g.axis(a);
    if (!ax.periodic)
      require(ib.first[ua] >= 2 && ib.last[ua] + 3 <= ax.n,
              "surface_integral: box touches the grid boundary on axis " + std::to_string(a));
    const auto face = face_values(g, v.components[ua], a);
    const double area = g.cell_volume() / ax.spacing();
    const std::size_t lower_face = ib.first[ua] == 0 ? ax.n - 1 : ib.first[ua] - 1;

    IndexBox slab = ib;
    slab.first[ua] = slab.last[ua] = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      bool inside = true;
      for (int b = 0; b < g.dim() && inside; ++b) {
        if (b == a) continue;
        const auto k = g.axis_index(i, b);
        inside = k >= ib.first[static_cast<std::size_t>(b)] && k <= ib.last[static_cast<std::size_t>(b)];
      }
      if (!inside) continue;
      const auto k = g.axis_index(i, a);
      if (k == ib.last[ua]) total += face[i] * area;
      if (k == lower_face) total -= face[i] * area;
    }
  }
  return total;
}

}  // namespace edlab
