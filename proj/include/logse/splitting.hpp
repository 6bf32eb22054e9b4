#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logse/flows.hpp"
#include "logse/grid.hpp"

namespace logse {

/// LT:  A(tau) B(tau)            (B applied first)
/// ST1: B(tau/2) A(tau) B(tau/2)
/// ST2: A(tau/2) B(tau) A(tau/2)
enum class SplitScheme { LT, ST1, ST2 };

SplitScheme parse_split_scheme(const std::string& name);
std::string to_string(SplitScheme scheme);

/// A time step produced a non-finite field.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Observables recorded along a trajectory.
struct ObservableSample {
  double t = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double kinetic = 0.0;
  double interaction = 0.0;
  /// Fixed-point iterations of the step that produced this sample; -1 for
  /// explicit steppers and for the initial sample.
  int fp_iters = -1;
  /// Discrete CNFD energy when recorded by the CNFD driver, NaN otherwise.
  double discrete_energy = std::numeric_limits<double>::quiet_NaN();
};

ObservableSample observe(const ComplexField& u, double t, const ModelParams& p);

struct Snapshot {
  double t;
  ComplexField field;
};

struct Trajectory {
  std::vector<double> times;  // times of the observable samples
  std::vector<ObservableSample> observables;
  std::vector<Snapshot> snapshots;
  ComplexField final_field;
  double final_time = 0.0;
};

/// Thrown by evolve drivers; carries the last finite field.
class EvolveFailure : public StepFailure {
 public:
  EvolveFailure(std::size_t step, const std::string& what, ComplexField last_good,
                double last_good_t)
      : StepFailure(step, what), last_good_(std::move(last_good)), last_good_t_(last_good_t) {}
  const ComplexField& last_good() const { return last_good_; }
  double last_good_time() const { return last_good_t_; }

 private:
  ComplexField last_good_;
  double last_good_t_;
};

/// Split-step stepper with cached transform state for one grid.
///
/// advance() fuses the adjacent half-step nonlinear flows of ST1 (and the
/// adjacent free half-steps of ST2) between steps; the composed map equals n
/// calls of step() up to roundoff.
class SplitStepper {
 public:
  SplitStepper(const Grid1D& grid, SplitScheme scheme, ModelParams p);

  SplitScheme scheme() const { return scheme_; }

  void step(std::span<cplx> u, double tau);
  void advance(std::span<cplx> u, double tau, std::size_t n_steps);

 private:
  SplitScheme scheme_;
  ModelParams p_;
  FlowWorkspace ws_;
};

/// One time step of the chosen splitting.
ComplexField step(const ComplexField& u, double tau, SplitScheme scheme, const ModelParams& p);

/// Marches n_steps of size tau. Observables are recorded at step 0, every
/// observe_stride steps and at the final step. Each requested snapshot time
/// is stored at the nearest completed step. Throws EvolveFailure if the
/// field becomes non-finite.
Trajectory evolve(const ComplexField& u0, double tau, std::size_t n_steps, SplitScheme scheme,
                  const ModelParams& p, std::size_t observe_stride,
                  const std::vector<double>& snapshot_times = {});

/// Step indices at which snapshots are taken (nearest step, clamped).
std::vector<std::size_t> snapshot_steps(const std::vector<double>& snapshot_times, double tau,
                                        std::size_t n_steps);

}  // namespace logse
