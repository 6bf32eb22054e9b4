#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace logse {

using cplx = std::complex<double>;

/// Raised for invalid grid, model or study parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Periodic uniform grid on [a, b) with M nodes x_j = a + j h, j = 0..M-1.
///
/// The right endpoint is identified with x_0 and is not stored. Wavenumbers
/// follow the unnormalized-DFT index order
///   mu_l = 2 pi / (b - a) * [0, 1, ..., M/2 - 1, -M/2, ..., -1].
class Grid1D {
 public:
  Grid1D(double a, double b, std::size_t M);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t size() const { return M_; }
  double h() const { return h_; }
  double length() const { return b_ - a_; }

  double node(std::size_t j) const { return a_ + static_cast<double>(j) * h_; }
  double wavenumber(std::size_t l) const;

  std::vector<double> nodes() const;
  std::vector<double> wavenumbers() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double a_;
  double b_;
  std::size_t M_;
  double h_;
};

/// Validating factory; throws ConfigError for b <= a, odd M or M < 4.
Grid1D make_grid(double a, double b, std::size_t M);

/// Complex samples of a wave function on a Grid1D.
class ComplexField {
 public:
  explicit ComplexField(Grid1D grid);
  ComplexField(Grid1D grid, std::vector<cplx> values);

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }

  const cplx& operator[](std::size_t j) const { return values_[j]; }
  cplx& operator[](std::size_t j) { return values_[j]; }

  bool all_finite() const;

 private:
  Grid1D grid_;
  std::vector<cplx> values_;
};

/// Nonlinearity strength lambda and regularization epsilon of the model
///   i u_t + u_xx = lambda u ln((eps + |u|)^2).
struct ModelParams {
  double lambda = -1.0;
  double epsilon = 1e-15;

  void validate() const;
  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

}  // namespace logse
