#include "edlab/field.hpp"

#include <cmath>
#include <string>

#include "edlab/error.hpp"

namespace edlab {

ScalarField::ScalarField(Grid g, std::vector<double> v, double t)
    : grid(std::move(g)), values(std::move(v)), time(t) {
  require(values.size() == grid.size(), "ScalarField: value count does not match grid");
}

VectorField::VectorField(Grid g, double t) : grid(std::move(g)), time(t) {
  components.assign(static_cast<std::size_t>(grid.dim()), std::vector<double>(grid.size(), 0.0));
}

SpinorField::SpinorField(Grid g, PhysConstants c, double t) : grid(std::move(g)), time(t), constants(c) {
  for (auto& v : comp) v.assign(grid.size(), cplx{});
}

std::vector<double> SpinorField::density() const {
  std::vector<double> d(size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(comp[0][i]) + std::norm(comp[1][i]);
  return d;
}

void SpinorField::validate() const {
  constants.validate();
  for (const auto& v : comp) {
    require(v.size() == grid.size(), "SpinorField: amplitude count does not match grid");
    for (const auto& z : v) require(std::isfinite(z.real()) && std::isfinite(z.imag()), "SpinorField: non-finite amplitude");
  }
}

BispinorField::BispinorField(Grid g, PhysConstants c, double t) : grid(std::move(g)), time(t), constants(c) {
  for (auto& v : comp) v.assign(grid.size(), cplx{});
}

std::vector<double> BispinorField::density() const {
  std::vector<double> d(grid.size(), 0.0);
  for (const auto& v : comp)
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += std::norm(v[i]);
  return d;
}

void BispinorField::validate() const {
  constants.validate();
  for (const auto& v : comp) {
    require(v.size() == grid.size(), "BispinorField: amplitude count does not match grid");
    for (const auto& z : v) require(std::isfinite(z.real()) && std::isfinite(z.imag()), "BispinorField: non-finite amplitude");
  }
}

SpinorField make_spinor(const Grid& g, const std::vector<cplx>& psi, const std::array<cplx, 2>& spin,
                        const PhysConstants& c, double t) {
  require(psi.size() == g.size(), "make_spinor: amplitude count does not match grid");
  SpinorField f(g, c, t);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    f.comp[0][i] = spin[0] * psi[i];
    f.comp[1][i] = spin[1] * psi[i];
  }
  return f;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  require(a == b, std::string(where) + ": grid mismatch");
}

}  // namespace edlab
