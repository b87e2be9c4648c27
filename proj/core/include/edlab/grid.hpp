#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace edlab {

/// One axis of a rectilinear grid. Periodic axes sample [min, max) with
/// spacing (max-min)/n; non-periodic axes sample [min, max] inclusive.
struct Axis {
  std::size_t n = 0;
  double min = 0.0;
  double max = 1.0;
  bool periodic = true;

  double length() const { return max - min; }
  double spacing() const {
    return periodic ? length() / static_cast<double>(n) : length() / static_cast<double>(n - 1);
  }
  double coord(std::size_t i) const { return min + static_cast<double>(i) * spacing(); }

  /// Angular wavenumber of FFT bin `i` (standard ordering, negative half last).
  double wavenumber(std::size_t i) const;

  friend bool operator==(const Axis&, const Axis&) = default;
};

using Index3 = std::array<std::size_t, 3>;

/// Row-major grid of dimension 1..3; the last axis is contiguous.
class Grid {
 public:
  static constexpr std::size_t kMinPoints = 8;
  static constexpr std::size_t kMaxTotalPoints = std::size_t{1} << 26;

  Grid() = default;
  explicit Grid(std::vector<Axis> axes);

  static Grid line(std::size_t n, double min, double max, bool periodic = true);

  int dim() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_.at(static_cast<std::size_t>(a)); }
  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t size() const { return size_; }
  std::size_t stride(int a) const { return strides_[static_cast<std::size_t>(a)]; }

  double spacing(int a) const { return axis(a).spacing(); }
  double coord(int a, std::size_t i) const { return axis(a).coord(i); }
  double cell_volume() const;

  std::size_t flat(const Index3& idx) const;
  Index3 unflat(std::size_t flat) const;
  std::size_t axis_index(std::size_t flat, int a) const {
    return (flat / strides_[static_cast<std::size_t>(a)]) % axes_[static_cast<std::size_t>(a)].n;
  }
  /// Coordinates of a flat index; entries beyond dim() are zero.
  std::array<double, 3> point(std::size_t flat) const;

  bool all_periodic() const;

  friend bool operator==(const Grid& a, const Grid& b) { return a.axes_ == b.axes_; }

 private:
  std::vector<Axis> axes_;
  std::array<std::size_t, 3> strides_{1, 1, 1};
  std::size_t size_ = 0;
};

/// Coordinate box; entries beyond the grid dimension are ignored.
struct Box {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
};

/// Inclusive node ranges selected by a Box: the nodes whose cells
/// [x - h/2, x + h/2] lie inside the box.
struct IndexBox {
  Index3 first{};
  Index3 last{};
  int dim = 0;

  std::size_t count() const;
  Box cell_extent(const Grid& g) const;
};

IndexBox snap(const Grid& g, const Box& box);

/// Index map r -> -r; requires every axis to be symmetric about the origin.
std::vector<std::size_t> inversion_map(const Grid& g);

}  // namespace edlab
