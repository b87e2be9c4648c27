#pragma once

#include <complex>

#include "edlab/error.hpp"

namespace edlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cplx kI{0.0, 1.0};

/// Unit system. Defaults to hbar = m = 1; `c` only matters for the
/// relativistic-limit operations.
struct PhysConstants {
  double hbar = 1.0;
  double mass = 1.0;
  double c = 137.035999084;
  double charge = 1.0;  ///< |e|

  void validate() const {
    require(hbar > 0 && mass > 0 && c > 0 && charge > 0,
            "PhysConstants: hbar, mass, c and charge must be strictly positive");
  }

  friend bool operator==(const PhysConstants&, const PhysConstants&) = default;
};

}  // namespace edlab
