#include "edlab/grid.hpp"

#include <cmath>
#include <string>

#include "edlab/constants.hpp"
#include "edlab/error.hpp"

namespace edlab {

double Axis::wavenumber(std::size_t i) const {
  const double dk = 2.0 * kPi / (static_cast<double>(n) * spacing());
  const auto half = n / 2;
  const double m = i <= half ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(n);
  return m * dk;
}

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  require(!axes_.empty() && axes_.size() <= 3, "Grid: dimension must be 1, 2 or 3");
  size_ = 1;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const Axis& ax = axes_[a];
    require(ax.n >= kMinPoints, "Grid: axis " + std::to_string(a) + " needs at least 8 points");
    require(std::isfinite(ax.min) && std::isfinite(ax.max) && ax.max > ax.min,
            "Grid: axis " + std::to_string(a) + " requires max > min");
    require(ax.spacing() > 0, "Grid: non-positive spacing");
    require(size_ <= kMaxTotalPoints / ax.n, "Grid: point count exceeds the memory budget");
    size_ *= ax.n;
  }
  std::size_t s = 1;
  for (int a = dim() - 1; a >= 0; --a) {
    strides_[static_cast<std::size_t>(a)] = s;
    s *= axes_[static_cast<std::size_t>(a)].n;
  }
}

Grid Grid::line(std::size_t n, double min, double max, bool periodic) {
  return Grid({Axis{n, min, max, periodic}});
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (const auto& ax : axes_) v *= ax.spacing();
  return v;
}

std::size_t Grid::flat(const Index3& idx) const {
  std::size_t f = 0;
  for (int a = 0; a < dim(); ++a) f += idx[static_cast<std::size_t>(a)] * strides_[static_cast<std::size_t>(a)];
  return f;
}

Index3 Grid::unflat(std::size_t f) const {
  Index3 idx{};
  for (int a = 0; a < dim(); ++a) idx[static_cast<std::size_t>(a)] = axis_index(f, a);
  return idx;
}

std::array<double, 3> Grid::point(std::size_t f) const {
  std::array<double, 3> p{};
  for (int a = 0; a < dim(); ++a) p[static_cast<std::size_t>(a)] = coord(a, axis_index(f, a));
  return p;
}

bool Grid::all_periodic() const {
  for (const auto& ax : axes_)
    if (!ax.periodic) return false;
  return true;
}

std::size_t IndexBox::count() const {
  std::size_t c = 1;
  for (int a = 0; a < dim; ++a) c *= last[static_cast<std::size_t>(a)] - first[static_cast<std::size_t>(a)] + 1;
  return c;
}

Box IndexBox::cell_extent(const Grid& g) const {
  Box b;
  for (int a = 0; a < dim; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const double h = g.spacing(a);
    b.lo[ua] = g.coord(a, first[ua]) - 0.5 * h;
    b.hi[ua] = g.coord(a, last[ua]) + 0.5 * h;
  }
  return b;
}

IndexBox snap(const Grid& g, const Box& box) {
  IndexBox ib;
  ib.dim = g.dim();
  for (int a = 0; a < g.dim(); ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const Axis& ax = g.axis(a);
    const double h = ax.spacing();
    const double tol = 1e-9 * h;
    require(box.hi[ua] > box.lo[ua], "snap: empty region");
    // first node whose cell starts at or after lo
    const double fi = std::ceil((box.lo[ua] + 0.5 * h - ax.min - tol) / h);
    const double li = std::floor((box.hi[ua] - 0.5 * h - ax.min + tol) / h);
    require(fi <= li && li >= 0, "snap: region contains no grid cell");
    const double upper = static_cast<double>(ax.n - 1);
    require(fi >= 0 && li <= upper, "snap: region extends beyond the grid");
    ib.first[ua] = static_cast<std::size_t>(fi);
    ib.last[ua] = static_cast<std::size_t>(li);
  }
  return ib;
}

std::vector<std::size_t> inversion_map(const Grid& g) {
  std::array<std::vector<std::size_t>, 3> per_axis;
  for (int a = 0; a < g.dim(); ++a) {
    const Axis& ax = g.axis(a);
    const double h = ax.spacing();
    auto& m = per_axis[static_cast<std::size_t>(a)];
    m.resize(ax.n);
    if (ax.periodic) {
      require(std::abs(ax.min + 0.5 * ax.length()) < 1e-12 * ax.length(),
              "inversion_map: periodic axis must be [-L/2, L/2)");
      for (std::size_t i = 0; i < ax.n; ++i) m[i] = (ax.n - i) % ax.n;
    } else {
      require(std::abs(ax.min + ax.max) < 1e-9 * h, "inversion_map: axis must be symmetric about 0");
      for (std::size_t i = 0; i < ax.n; ++i) m[i] = ax.n - 1 - i;
    }
  }
  std::vector<std::size_t> map(g.size());
  for (std::size_t f = 0; f < g.size(); ++f) {
    Index3 idx = g.unflat(f);
    for (int a = 0; a < g.dim(); ++a) idx[static_cast<std::size_t>(a)] = per_axis[static_cast<std::size_t>(a)][idx[static_cast<std::size_t>(a)]];
    map[f] = g.flat(idx);
  }
  return map;
}

}  // namespace edlab
