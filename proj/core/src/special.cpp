#include "edlab/special.hpp"

#include <boost/math/special_functions/airy.hpp>

#include <cmath>
#include <vector>

#include "edlab/constants.hpp"
#include "edlab/error.hpp"

namespace edlab::special {

void hermite_functions(int nmax, double u, std::span<double> out) {
  require(nmax >= 0, "hermite_functions: negative order");
  require(out.size() >= static_cast<std::size_t>(nmax) + 1, "hermite_functions: output too small");
  // Run the recurrence without the Gaussian factor, rescaling to keep the
  // values finite, and fold the accumulated log-scale into the weight at the end.
  std::vector<double> log_scale(static_cast<std::size_t>(nmax) + 1, 0.0);
  double scale = 0.0;
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25);
  out[0] = cur;
  for (int n = 0; n < nmax; ++n) {
    const double nd = n;
    double next = std::sqrt(2.0 / (nd + 1.0)) * u * cur - std::sqrt(nd / (nd + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e150) {
      prev *= 1e-150;
      cur *= 1e-150;
      scale += 150.0 * std::log(10.0);
    }
    out[static_cast<std::size_t>(n) + 1] = cur;
    log_scale[static_cast<std::size_t>(n) + 1] = scale;
  }
  const double g = -0.5 * u * u;
  for (int n = 0; n <= nmax; ++n) {
    const auto un = static_cast<std::size_t>(n);
    out[un] = out[un] == 0.0 ? 0.0 : out[un] * std::exp(g + log_scale[un]);
  }
}

double hermite_function(int n, double u) {
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  hermite_functions(n, u, v);
  return v.back();
}

double hermite_function_derivative(int n, double u) {
  std::vector<double> v(static_cast<std::size_t>(n) + 2);
  hermite_functions(n + 1, u, v);
  const double nd = n;
  const double lower = n > 0 ? std::sqrt(nd / 2.0) * v[static_cast<std::size_t>(n) - 1] : 0.0;
  return lower - std::sqrt((nd + 1.0) / 2.0) * v[static_cast<std::size_t>(n) + 1];
}

double airy_ai(double x) { return boost::math::airy_ai(x); }

double airy_ai_prime(double x) { return boost::math::airy_ai_prime(x); }

double airy_ai_zero(int k) {
  require(k >= 1, "airy_ai_zero: index starts at 1");
  return boost::math::airy_ai_zero<double>(k);
}

}  // namespace edlab::special
