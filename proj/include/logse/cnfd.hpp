#pragma once

#include <cstddef>
#include <vector>

#include "logse/grid.hpp"
#include "logse/splitting.hpp"

namespace logse {

/// Scalar functions of the density rho = |u|^2 used by the conservative scheme.
///   f(rho) = lambda ln((eps + sqrt(rho))^2)
///   F(rho) = 2 lambda (rho - eps^2) ln(eps + sqrt(rho)) - lambda rho + 2 eps lambda sqrt(rho)
/// F is an antiderivative of f; note F(0) = -2 lambda eps^2 ln(eps) is not zero.
double f_eps(double rho, const ModelParams& p);
double F_eps(double rho, const ModelParams& p);

/// f''(rho), used by the near-degenerate branch of g_eps.
double f_eps_second_derivative(double rho, const ModelParams& p);

/// Divided-difference nonlinearity
///   G(z1, z2) = (F(|z1|^2) - F(|z2|^2)) / (|z1|^2 - |z2|^2) * (z1 + z2) / 2.
/// When the two densities differ by at most kExpansionBand relative to their
/// mean m, the quotient is replaced by its expansion f(m) + f''(m) d^2 / 24
/// (d the density difference); for d = 0 this is the limit f(m) (z1 + z2) / 2.
cplx g_eps(cplx z1, cplx z2, const ModelParams& p);

inline constexpr double kExpansionBand = 1e-3;

/// Central second difference (u_{j+1} - 2 u_j + u_{j-1}) / h^2, periodic.
std::vector<cplx> second_difference(const ComplexField& u);

/// M_h = ||u||_{L2}^2.
double discrete_mass(const ComplexField& u);

/// E_h = |u|_{H1}^2 + h * sum F(|u_j|^2) with the forward-difference seminorm.
double discrete_energy(const ComplexField& u, const ModelParams& p);

enum class CnfdShift {
  /// Plain fixed point: the linear part carries only i/tau + delta_x^2 / 2.
  None,
  /// Moves a constant real shift s (midpoint of lambda ln(eps+|u_j|) over the
  /// grid) from the nonlinearity into the spectral solve. Same fixed point,
  /// contracts for much larger tau * |ln eps|.
  Midpoint,
};

struct CnfdParams {
  ModelParams model;
  double fp_tol = 1e-12;
  std::size_t max_iter = 100;
  CnfdShift shift = CnfdShift::Midpoint;

  void validate() const;
};

struct CnfdState {
  ComplexField field;
  std::size_t step_count = 0;
  std::size_t last_iter_count = 0;
  /// Relative L2 defect of the implicit relation after the last step.
  double last_residual = 0.0;
};

/// Fixed-point iteration failed to meet fp_tol within max_iter.
class CnfdStepFailure : public StepFailure {
 public:
  CnfdStepFailure(std::size_t step, const std::string& what, double residual)
      : StepFailure(step, what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// One Crank-Nicolson step
///   i (w - u)/tau = -1/2 delta_x^2 (u + w) + G(w, u),
/// solved by fixed-point iteration whose linear part is diagonalized by the
/// DFT (symbol of delta_x^2 is 2 (cos(mu h) - 1) / h^2).
CnfdState cnfd_step(const CnfdState& state, double tau, const CnfdParams& cp);

/// Relative L2 defect tau ||i(w-u)/tau + 1/2 delta_x^2(u+w) - G(w,u)|| / ||u||.
double cnfd_residual(const ComplexField& u, const ComplexField& w, double tau,
                     const ModelParams& p);

/// Marches n_steps CNFD steps, recording observables (with fp_iters and the
/// discrete energy) every observe_stride steps plus snapshots.
Trajectory cnfd_evolve(const ComplexField& u0, double tau, std::size_t n_steps,
                       const CnfdParams& cp, std::size_t observe_stride,
                       const std::vector<double>& snapshot_times = {});

}  // namespace logse
