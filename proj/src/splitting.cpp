#include "logse/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "logse/observables.hpp"

namespace logse {

SplitScheme parse_split_scheme(const std::string& name) {
  if (name == "LT" || name == "LTSP") return SplitScheme::LT;
  if (name == "ST1" || name == "STSP") return SplitScheme::ST1;
  if (name == "ST2") return SplitScheme::ST2;
  throw ConfigError("unknown splitting scheme '" + name + "' (expected LT, ST1 or ST2)");
}

std::string to_string(SplitScheme scheme) {
  switch (scheme) {
    case SplitScheme::LT: return "LT";
    case SplitScheme::ST1: return "ST1";
    case SplitScheme::ST2: return "ST2";
  }
  return "?";
}

ObservableSample observe(const ComplexField& u, double t, const ModelParams& p) {
  ObservableSample s;
  s.t = t;
  s.mass = mass(u);
  s.momentum = momentum(u);
  const auto e = energy_split(u, p);
  s.kinetic = e.kinetic;
  s.interaction = e.interaction;
  s.energy = e.total();
  return s;
}

SplitStepper::SplitStepper(const Grid1D& grid, SplitScheme scheme, ModelParams p)
    : scheme_(scheme), p_(p), ws_(grid) {
  p_.validate();
}

void SplitStepper::step(std::span<cplx> u, double tau) {
  switch (scheme_) {
    case SplitScheme::LT:
      apply_phase_flow(u, tau, p_);
      ws_.apply_free_flow(u, tau);
      break;
    case SplitScheme::ST1:
      apply_phase_flow(u, 0.5 * tau, p_);
      ws_.apply_free_flow(u, tau);
      apply_phase_flow(u, 0.5 * tau, p_);
      break;
    case SplitScheme::ST2:
      ws_.apply_free_flow(u, 0.5 * tau);
      apply_phase_flow(u, tau, p_);
      ws_.apply_free_flow(u, 0.5 * tau);
      break;
  }
}

void SplitStepper::advance(std::span<cplx> u, double tau, std::size_t n_steps) {
  if (n_steps == 0) return;
  switch (scheme_) {
    case SplitScheme::LT:
      for (std::size_t k = 0; k < n_steps; ++k) step(u, tau);
      break;
    case SplitScheme::ST1:
      apply_phase_flow(u, 0.5 * tau, p_);
      for (std::size_t k = 0; k + 1 < n_steps; ++k) {
        ws_.apply_free_flow(u, tau);
        apply_phase_flow(u, tau, p_);
      }
      ws_.apply_free_flow(u, tau);
      apply_phase_flow(u, 0.5 * tau, p_);
      break;
    case SplitScheme::ST2:
      ws_.apply_free_flow(u, 0.5 * tau);
      for (std::size_t k = 0; k + 1 < n_steps; ++k) {
        apply_phase_flow(u, tau, p_);
        ws_.apply_free_flow(u, tau);
      }
      apply_phase_flow(u, tau, p_);
      ws_.apply_free_flow(u, 0.5 * tau);
      break;
  }
}

ComplexField step(const ComplexField& u, double tau, SplitScheme scheme, const ModelParams& p) {
  SplitStepper stepper(u.grid(), scheme, p);
  ComplexField out = u;
  stepper.step(out.values(), tau);
  return out;
}

std::vector<std::size_t> snapshot_steps(const std::vector<double>& snapshot_times, double tau,
                                        std::size_t n_steps) {
  std::vector<std::size_t> steps;
  steps.reserve(snapshot_times.size());
  for (double t : snapshot_times) {
    const double k = std::round(t / tau);
    steps.push_back(static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(n_steps))));
  }
  return steps;
}

Trajectory evolve(const ComplexField& u0, double tau, std::size_t n_steps, SplitScheme scheme,
                  const ModelParams& p, std::size_t observe_stride,
                  const std::vector<double>& snapshot_times) {
  if (!(tau > 0.0)) throw ConfigError("evolve: time step must be positive");
  if (n_steps == 0) throw ConfigError("evolve: n_steps must be >= 1");
  if (observe_stride == 0) observe_stride = n_steps;

  const auto snap_steps = snapshot_steps(snapshot_times, tau, n_steps);
  std::set<std::size_t> events(snap_steps.begin(), snap_steps.end());
  for (std::size_t k = 0; k <= n_steps; k += observe_stride) events.insert(k);
  events.insert(n_steps);

  SplitStepper stepper(u0.grid(), scheme, p);
  Trajectory traj{{}, {}, {}, u0, 0.0};
  ComplexField& u = traj.final_field;
  ComplexField last_good = u0;
  std::size_t done = 0;

  for (std::size_t k : events) {
    if (k > done) {
      stepper.advance(u.values(), tau, k - done);
      if (!u.all_finite()) {
        throw EvolveFailure(k, "non-finite field detected at step " + std::to_string(k) +
                                   " (t=" + std::to_string(static_cast<double>(k) * tau) + ")",
                            last_good, static_cast<double>(done) * tau);
      }
      done = k;
      last_good = u;
    }
    const double t = static_cast<double>(k) * tau;
    if (k % observe_stride == 0 || k == n_steps) {
      traj.times.push_back(t);
      traj.observables.push_back(observe(u, t, p));
    }
    for (std::size_t s = 0; s < snap_steps.size(); ++s) {
      if (snap_steps[s] == k) traj.snapshots.push_back({t, u});
    }
  }
  traj.final_time = static_cast<double>(n_steps) * tau;
  return traj;
}

}  // namespace logse
