#include "logse/reference.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace logse {

void GaussianParams::validate() const {
  if (!(a0.real() > 0.0)) {
    throw ConfigError("gaussian: Re(a0) must be positive, got " + std::to_string(a0.real()));
  }
}

GaussonOdeState initial_ode_state(const GaussianParams& gp) {
  return {0.0, 1.0, -2.0 * gp.a0.imag(), 0.0};
}

namespace {

struct Rates {
  double r;
  double rdot;
  double phi;
};

Rates rates(double r, double rdot, const GaussianParams& gp, double lambda) {
  if (!(r > 0.0)) throw OdeFailure("gaussian ODE: width r left (0, inf), r = " + std::to_string(r));
  const double alpha = gp.alpha0();
  const double log_b2 = std::log(std::norm(gp.b0));
  return {rdot, 4.0 * alpha * alpha / (r * r * r) + 4.0 * lambda * alpha / r,
          alpha / (r * r) + lambda * log_b2 - lambda * std::log(r)};
}

}  // namespace

GaussonOdeState rk4_step(const GaussonOdeState& s, const GaussianParams& gp, double lambda,
                         double dt) {
  const Rates k1 = rates(s.r, s.rdot, gp, lambda);
  const Rates k2 = rates(s.r + 0.5 * dt * k1.r, s.rdot + 0.5 * dt * k1.rdot, gp, lambda);
  const Rates k3 = rates(s.r + 0.5 * dt * k2.r, s.rdot + 0.5 * dt * k2.rdot, gp, lambda);
  const Rates k4 = rates(s.r + dt * k3.r, s.rdot + dt * k3.rdot, gp, lambda);
  GaussonOdeState out;
  out.t = s.t + dt;
  out.r = s.r + dt / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
  out.rdot = s.rdot + dt / 6.0 * (k1.rdot + 2.0 * k2.rdot + 2.0 * k3.rdot + k4.rdot);
  out.phi = s.phi + dt / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
  if (!(out.r > 0.0)) {
    throw OdeFailure("gaussian ODE: width r became non-positive at t = " + std::to_string(out.t));
  }
  return out;
}

double default_ode_dt(double t_end) { return 1e-4 * std::clamp(t_end, 1e-3, 1.0); }

GaussonOdeState integrate_ode(const GaussianParams& gp, double lambda, double t_end, double dt) {
  gp.validate();
  if (!(t_end >= 0.0)) throw ConfigError("integrate_ode: t_end must be >= 0");
  if (!(dt > 0.0)) throw ConfigError("integrate_ode: dt must be positive");
  GaussonOdeState s = initial_ode_state(gp);
  const auto n_full = static_cast<std::size_t>(std::floor(t_end / dt));
  for (std::size_t k = 0; k < n_full; ++k) s = rk4_step(s, gp, lambda, dt);
  // Recompute t from the step count to avoid drift from repeated addition.
  s.t = static_cast<double>(n_full) * dt;
  const double rest = t_end - s.t;
  if (rest > 1e-14 * std::max(1.0, t_end)) s = rk4_step(s, gp, lambda, rest);
  s.t = t_end;
  return s;
}

double ode_first_integral(const GaussonOdeState& s, const GaussianParams& gp, double lambda) {
  const double alpha = gp.alpha0();
  return 0.5 * s.rdot * s.rdot + 2.0 * alpha * alpha / (s.r * s.r) -
         4.0 * lambda * alpha * std::log(s.r);
}

ComplexField exact_gaussian(const GaussianParams& gp, const Grid1D& grid,
                            const GaussonOdeState& s) {
  const double alpha = gp.alpha0();
  const double t = s.t;
  const cplx amp = gp.b0 / std::sqrt(s.r);
  ComplexField u(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    const double y = x - 2.0 * gp.v * t - gp.x0;
    const double y2 = y * y;
    const double re = -alpha * y2 / (2.0 * s.r * s.r);
    const double im = gp.v * x - gp.v * gp.v * t - s.phi + (s.rdot / s.r) * y2 / 4.0;
    u[j] = amp * std::exp(cplx{re, im});
  }
  const double edge = std::max(std::abs(u[0]), std::abs(u[grid.size() - 1]));
  if (edge > 1e-14) {
    std::clog << "warning: exact Gaussian reaches |u| = " << edge
              << " at the domain boundary; periodic truncation is not negligible\n";
  }
  return u;
}

ComplexField exact_gaussian(const GaussianParams& gp, double lambda, const Grid1D& grid, double t,
                            double dt_ode) {
  if (dt_ode <= 0.0) dt_ode = default_ode_dt(t);
  return exact_gaussian(gp, grid, integrate_ode(gp, lambda, t, dt_ode));
}

std::string to_string(GaussianKind kind) {
  switch (kind) {
    case GaussianKind::Gausson: return "gausson";
    case GaussianKind::Breather: return "breather";
    case GaussianKind::Spreading: return "spreading";
  }
  return "?";
}

GaussianKind classify(const GaussianParams& gp, double lambda) {
  if (lambda == 0.0) throw ConfigError("classify: lambda must be nonzero");
  gp.validate();
  if (lambda > 0.0) return GaussianKind::Spreading;
  if (gp.alpha0() == -lambda && gp.a0.imag() == 0.0) return GaussianKind::Gausson;
  return GaussianKind::Breather;
}

}  // namespace logse
