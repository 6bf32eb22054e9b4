#pragma once

#include <vector>

#include "logse/fft.hpp"
#include "logse/grid.hpp"

namespace logse {

/// Regularized nonlinearity lambda * z * ln((eps + |z|)^2).
cplx phi_eps(cplx z, const ModelParams& p);

/// Transform state and phase tables for repeated free-flow evaluations on
/// one grid. Owned by a single thread.
class FlowWorkspace {
 public:
  explicit FlowWorkspace(const Grid1D& grid);

  const Grid1D& grid() const { return grid_; }

  /// In-place e^{i t d_xx}: each DFT coefficient times exp(-i t mu_l^2).
  /// Negative t runs the flow backwards.
  void apply_free_flow(std::span<cplx> values, double t);

 private:
  struct PhaseTable {
    double t;
    std::vector<cplx> phase;
  };
  const std::vector<cplx>& phases_for(double t);

  Grid1D grid_;
  Fft& fft_;
  std::vector<double> mu2_;
  std::vector<cplx> coeff_;
  // The steppers alternate between at most two time increments.
  std::vector<PhaseTable> tables_;
};

/// Free Schroedinger flow e^{i t d_xx} (spectral, exact in time).
ComplexField flow_A(const ComplexField& u, double t);

/// Pointwise phase flow u * exp(-i lambda t ln((eps + |u|)^2)); |u_j| is kept.
ComplexField flow_B(const ComplexField& u, double t, const ModelParams& p);

/// In-place variant of flow_B.
void apply_phase_flow(std::span<cplx> values, double t, const ModelParams& p);

}  // namespace logse
