#include "logse/cnfd.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "logse/fft.hpp"
#include "logse/observables.hpp"

namespace logse {

double f_eps(double rho, const ModelParams& p) {
  if (rho < 0.0) throw std::domain_error("f_eps: negative density");
  return p.lambda * 2.0 * std::log(p.epsilon + std::sqrt(rho));
}

double F_eps(double rho, const ModelParams& p) {
  if (rho < 0.0) throw std::domain_error("F_eps: negative density");
  const double eps = p.epsilon;
  const double s = std::sqrt(rho);
  return p.lambda * (2.0 * (rho - eps * eps) * std::log(eps + s) - rho + 2.0 * eps * s);
}

double f_eps_second_derivative(double rho, const ModelParams& p) {
  const double s = std::sqrt(rho);
  const double q = p.epsilon * s + rho;
  return -p.lambda * (p.epsilon + 2.0 * s) / (2.0 * s * q * q);
}

cplx g_eps(cplx z1, cplx z2, const ModelParams& p) {
  const double r1 = std::norm(z1);
  const double r2 = std::norm(z2);
  const cplx mid = 0.5 * (z1 + z2);
  const double delta = r1 - r2;
  const double m = 0.5 * (r1 + r2);
  if (delta == 0.0) return f_eps(m, p) * mid;
  if (std::abs(delta) <= kExpansionBand * m) {
    // Symmetric difference quotient of F about m: f(m) + f''(m) delta^2 / 24 + O(delta^4).
    return (f_eps(m, p) + f_eps_second_derivative(m, p) * delta * delta / 24.0) * mid;
  }
  return (F_eps(r1, p) - F_eps(r2, p)) / delta * mid;
}

std::vector<cplx> second_difference(const ComplexField& u) {
  const std::size_t M = u.size();
  const double inv_h2 = 1.0 / (u.grid().h() * u.grid().h());
  std::vector<cplx> d(M);
  for (std::size_t j = 0; j < M; ++j) {
    d[j] = (u[(j + 1) % M] - 2.0 * u[j] + u[(j + M - 1) % M]) * inv_h2;
  }
  return d;
}

double discrete_mass(const ComplexField& u) { return mass(u); }

double discrete_energy(const ComplexField& u, const ModelParams& p) {
  const double semi = h1_seminorm(u);
  double acc = 0.0;
  for (const auto& z : u.values()) acc += F_eps(std::norm(z), p);
  return semi * semi + u.grid().h() * acc;
}

void CnfdParams::validate() const {
  model.validate();
  if (!(fp_tol > 0.0)) throw ConfigError("cnfd: fp_tol must be positive");
  if (max_iter < 1) throw ConfigError("cnfd: max_iter must be >= 1");
}

double cnfd_residual(const ComplexField& u, const ComplexField& w, double tau,
                     const ModelParams& p) {
  ComplexField sum(u.grid());
  for (std::size_t j = 0; j < u.size(); ++j) sum[j] = u[j] + w[j];
  const auto lap = second_difference(sum);
  const cplx i{0.0, 1.0};
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const cplx defect = i * (w[j] - u[j]) + tau * (0.5 * lap[j] - g_eps(w[j], u[j], p));
    acc += std::norm(defect);
  }
  const double un = norm(u, NormKind::L2);
  const double d = std::sqrt(u.grid().h() * acc);
  return un > 0.0 ? d / un : d;
}

namespace {

double l2_distance(std::span<const cplx> a, std::span<const cplx> b, double h) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::norm(a[j] - b[j]);
  return std::sqrt(h * acc);
}

double midpoint_shift(const ComplexField& u, const ModelParams& p) {
  double lo = std::abs(u[0]);
  double hi = lo;
  for (const auto& z : u.values()) {
    const double m = std::abs(z);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return 0.5 * p.lambda * (std::log(p.epsilon + lo) + std::log(p.epsilon + hi));
}

}  // namespace

CnfdState cnfd_step(const CnfdState& state, double tau, const CnfdParams& cp) {
  if (!(tau > 0.0)) throw ConfigError("cnfd_step: time step must be positive");
  const ComplexField& u = state.field;
  const Grid1D& g = u.grid();
  const std::size_t M = g.size();
  const double h = g.h();
  const ModelParams& p = cp.model;
  const cplx i{0.0, 1.0};
  auto& fft = thread_fft(M);

  const double s = cp.shift == CnfdShift::Midpoint ? midpoint_shift(u, p) : 0.0;

  // Symbol of i/tau + delta_x^2/2 - s.
  std::vector<cplx> symbol(M);
  for (std::size_t l = 0; l < M; ++l) {
    const double lap = 2.0 * (std::cos(g.wavenumber(l) * h) - 1.0) / (h * h);
    symbol[l] = cplx{0.5 * lap - s, 1.0 / tau};
  }

  const auto lap_u = second_difference(u);
  std::vector<cplx> rhs0(M);
  for (std::size_t j = 0; j < M; ++j) rhs0[j] = i * u[j] / tau - 0.5 * lap_u[j];

  const double unorm = norm(u, NormKind::L2);
  const double stop = cp.fp_tol * unorm;

  std::vector<cplx> w(u.values().begin(), u.values().end());
  std::vector<cplx> next(M);
  double diff = 0.0;
  std::size_t iters = 0;
  bool converged = false;
  while (iters < cp.max_iter) {
    ++iters;
    for (std::size_t j = 0; j < M; ++j) next[j] = rhs0[j] + g_eps(w[j], u[j], p) - s * w[j];
    fft.forward(next, next);
    for (std::size_t l = 0; l < M; ++l) next[l] /= symbol[l];
    fft.inverse(next, next);
    diff = l2_distance(next, w, h);
    w.swap(next);
    if (!std::isfinite(diff)) break;
    if (diff <= stop) {
      converged = true;
      break;
    }
  }

  const std::size_t step_index = state.step_count + 1;
  if (!converged) {
    const double rel = unorm > 0.0 ? diff / unorm : diff;
    throw CnfdStepFailure(step_index,
                          "cnfd: fixed-point iteration did not converge at step " +
                              std::to_string(step_index) + " after " + std::to_string(iters) +
                              " iterations (relative update " + std::to_string(rel) + ")",
                          rel);
  }

  CnfdState out{ComplexField(g, std::move(w)), step_index, iters, 0.0};
  out.last_residual = cnfd_residual(u, out.field, tau, p);
  return out;
}

Trajectory cnfd_evolve(const ComplexField& u0, double tau, std::size_t n_steps,
                       const CnfdParams& cp, std::size_t observe_stride,
                       const std::vector<double>& snapshot_times) {
  cp.validate();
  if (!(tau > 0.0)) throw ConfigError("cnfd_evolve: time step must be positive");
  if (n_steps == 0) throw ConfigError("cnfd_evolve: n_steps must be >= 1");
  if (observe_stride == 0) observe_stride = n_steps;

  const auto snap_steps = snapshot_steps(snapshot_times, tau, n_steps);
  auto record = [&](Trajectory& traj, const CnfdState& st) {
    const std::size_t k = st.step_count;
    const double t = static_cast<double>(k) * tau;
    if (k % observe_stride == 0 || k == n_steps) {
      auto obs = observe(st.field, t, cp.model);
      obs.fp_iters = k == 0 ? -1 : static_cast<int>(st.last_iter_count);
      obs.discrete_energy = discrete_energy(st.field, cp.model);
      traj.times.push_back(t);
      traj.observables.push_back(obs);
    }
    for (std::size_t s : snap_steps) {
      if (s == k) traj.snapshots.push_back({t, st.field});
    }
  };

  Trajectory traj{{}, {}, {}, u0, 0.0};
  CnfdState st{u0, 0, 0, 0.0};
  record(traj, st);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * tau;
    CnfdState next{st.field};
    try {
      next = cnfd_step(st, tau, cp);
    } catch (const CnfdStepFailure& e) {
      throw EvolveFailure(k, e.what(), st.field, t_prev);
    }
    if (!next.field.all_finite()) {
      throw EvolveFailure(k, "non-finite field detected at step " + std::to_string(k), st.field,
                          t_prev);
    }
    st = std::move(next);
    record(traj, st);
  }
  traj.final_field = st.field;
  traj.final_time = static_cast<double>(n_steps) * tau;
  return traj;
}

}  // namespace logse
