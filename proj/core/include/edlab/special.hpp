#pragma once

#include <span>

namespace edlab::special {

/// Normalized Hermite function psi_n(u) = (2^n n! sqrt(pi))^{-1/2} H_n(u) e^{-u^2/2}.
/// Upward recurrence with a running exponent shift; stable for n <= 200.
double hermite_function(int n, double u);

/// psi_0..psi_nmax at u into `out` (size nmax + 1).
void hermite_functions(int nmax, double u, std::span<double> out);

/// d psi_n / du.
double hermite_function_derivative(int n, double u);

double airy_ai(double x);
double airy_ai_prime(double x);

/// k-th zero of Ai (k = 1, 2, ...), negative.
double airy_ai_zero(int k);

}  // namespace edlab::special
