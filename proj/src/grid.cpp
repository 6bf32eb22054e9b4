#include "logse/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace logse {

Grid1D::Grid1D(double a, double b, std::size_t M)
    : a_(a), b_(b), M_(M), h_((b - a) / static_cast<double>(M)) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("grid: need finite endpoints with b > a, got a=" + std::to_string(a) +
                      " b=" + std::to_string(b));
  }
  if (M < 4 || M % 2 != 0) {
    throw ConfigError("grid: node count M must be even and >= 4, got " + std::to_string(M));
  }
}

double Grid1D::wavenumber(std::size_t l) const {
  const double k0 = 2.0 * std::numbers::pi / (b_ - a_);
  const auto half = M_ / 2;
  const double index = l < half ? static_cast<double>(l)
                                : static_cast<double>(l) - static_cast<double>(M_);
  return k0 * index;
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(M_);
  for (std::size_t j = 0; j < M_; ++j) x[j] = node(j);
  return x;
}

std::vector<double> Grid1D::wavenumbers() const {
  std::vector<double> mu(M_);
  for (std::size_t l = 0; l < M_; ++l) mu[l] = wavenumber(l);
  return mu;
}

Grid1D make_grid(double a, double b, std::size_t M) { return Grid1D(a, b, M); }

ComplexField::ComplexField(Grid1D grid) : grid_(grid), values_(grid.size()) {}

ComplexField::ComplexField(Grid1D grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field: " + std::to_string(values_.size()) +
                                " values for a grid of " + std::to_string(grid_.size()) +
                                " nodes");
  }
}

bool ComplexField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

void ModelParams::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("model: epsilon must be positive, got " + std::to_string(epsilon));
  }
  if (lambda == 0.0 || !std::isfinite(lambda)) {
    throw ConfigError("model: lambda must be finite and nonzero");
  }
}

}  // namespace logse
