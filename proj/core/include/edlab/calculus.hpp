#pragma once

#include <span>
#include <vector>

#include "edlab/field.hpp"
#include "edlab/grid.hpp"

namespace edlab {

/// d^order/dx_axis^order. Periodic axes are differentiated spectrally
/// (odd orders drop the Nyquist bin); non-periodic axes use fourth-order
/// finite differences, central in the interior and one-sided near the ends.
std::vector<cplx> derivative(const Grid& g, std::span<const cplx> f, int axis, int order);
std::vector<double> derivative(const Grid& g, std::span<const double> f, int axis, int order);

ScalarField derivative(const ScalarField& f, int axis, int order);
SpinorField derivative(const SpinorField& f, int axis, int order);

std::vector<cplx> laplacian(const Grid& g, std::span<const cplx> f);

ScalarField divergence(const VectorField& v);

/// Whole-grid quadrature: trapezoid on non-periodic axes, uniform
/// (midpoint-per-cell) weights on periodic axes.
double integrate(const ScalarField& f);
double integrate(const Grid& g, std::span<const double> f);

/// Cell-sum over the nodes whose cells lie in `region` (see snap()).
double integrate(const ScalarField& f, const Box& region);

/// Outward flux of `v` through the boundary of the snapped box. Face values
/// come from the flux reconstruction whose differences reproduce the
/// derivative operator, so integrate(divergence(v), box) equals this to
/// round-off. Throws if the box reaches the boundary stencils of a
/// non-periodic axis.
double surface_integral(const VectorField& v, const Box& box);

/// Values reconstructed at faces i+1/2 along `axis` (index i). Entries whose
/// stencil leaves a non-periodic axis are NaN.
std::vector<double> face_values(const Grid& g, std::span<const double> f, int axis);

namespace detail {
/// Finite-difference weights for derivative `order` at `z` over `nodes`.
std::vector<double> fornberg_weights(double z, std::span<const double> nodes, int order);
}  // namespace detail

}  // namespace edlab
