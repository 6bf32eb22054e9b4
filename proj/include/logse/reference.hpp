#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "logse/grid.hpp"

namespace logse {

/// Initial Gaussian b0 * exp(-a0/2 (x - x0)^2 + i v x) with Re(a0) > 0.
struct GaussianParams {
  cplx b0{1.0, 0.0};
  cplx a0{1.0, 0.0};
  double v = 0.0;
  double x0 = 0.0;

  double alpha0() const { return a0.real(); }
  void validate() const;
  friend bool operator==(const GaussianParams&, const GaussianParams&) = default;
};

/// State of the width/phase ODE system
///   phi' = alpha0 / r^2 + lambda ln|b0|^2 - lambda ln r,
///   r''  = 4 alpha0^2 / r^3 + 4 lambda alpha0 / r,
/// with r(0) = 1, r'(0) = -2 Im a0, phi(0) = 0.
struct GaussonOdeState {
  double t = 0.0;
  double r = 1.0;
  double rdot = 0.0;
  double phi = 0.0;
};

class OdeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GaussonOdeState initial_ode_state(const GaussianParams& gp);

/// One classical RK4 step of length dt. Throws OdeFailure if r <= 0 at any stage.
GaussonOdeState rk4_step(const GaussonOdeState& s, const GaussianParams& gp, double lambda,
                         double dt);

/// Fixed-step RK4 from t = 0 to t_end; the last step is shortened to land on
/// t_end exactly.
GaussonOdeState integrate_ode(const GaussianParams& gp, double lambda, double t_end, double dt);

/// Default ODE step: 1e-4 * min(1, t_end), floored so t_end = 0 stays valid.
double default_ode_dt(double t_end);

/// First integral of the r-equation: rdot^2/2 + 2 alpha0^2 / r^2 - 4 lambda alpha0 ln r.
double ode_first_integral(const GaussonOdeState& s, const GaussianParams& gp, double lambda);

/// Exact Gaussian solution of the unregularized equation on the whole line,
///   u(x,t) = b0 / sqrt(r) * exp(i (v x - v^2 t) + Y(x - 2 v t - x0, t)),
///   Y(y,t) = -i phi - alpha0 y^2 / (2 r^2) + i (rdot / r) y^2 / 4,
/// sampled on the grid. Pass dt_ode <= 0 for default_ode_dt(t).
ComplexField exact_gaussian(const GaussianParams& gp, double lambda, const Grid1D& grid, double t,
                            double dt_ode = 0.0);

/// Same, from an already integrated ODE state.
ComplexField exact_gaussian(const GaussianParams& gp, const Grid1D& grid,
                            const GaussonOdeState& s);

enum class GaussianKind { Gausson, Breather, Spreading };

std::string to_string(GaussianKind kind);

/// Gausson: lambda < 0, Re a0 == -lambda and Im a0 == 0. Breather: any other
/// lambda < 0. Spreading: lambda > 0. Throws ConfigError for lambda == 0.
GaussianKind classify(const GaussianParams& gp, double lambda);

}  // namespace logse
