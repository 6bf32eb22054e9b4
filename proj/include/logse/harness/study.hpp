#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logse/harness/config.hpp"
#include "logse/splitting.hpp"

namespace logse::harness {

/// Least-squares slope of log(error) against log(x).
struct OrderFit {
  double slope = 0.0;
  /// Root-mean-square residual of the log-log fit.
  double residual = 0.0;
  std::size_t points_used = 0;
  std::size_t points_total = 0;
};

/// Fits log(errors) against log(xs) after discarding errors below 10 * floor.
/// Needs at least 3 positive points. If fewer than 2 survive the floor cut,
/// all points are used. Constant inputs give slope 0 and residual 0.
OrderFit fit_order(const std::vector<double>& xs, const std::vector<double>& errors,
                   double floor = 0.0);

/// One error measurement. epsilon is the model epsilon of the run.
struct ErrorRow {
  Method method;
  double epsilon;
  double tau;
  double h;
  NormKind norm;
  double error;
};

struct FitRow {
  Method method;
  NormKind norm;
  OrderFit fit;
  /// Errors never grow by more than 5% when the step shrinks (analytic
  /// reference studies only; true otherwise).
  bool monotone = true;
};

/// Bookkeeping of one time march.
struct RunRecord {
  Method method;
  double epsilon;
  double tau;
  double h;
  std::size_t M;
  std::size_t steps;      // steps of length tau_used
  double tau_used;        // tau, or T/steps when tau divides T to 1e-6
  double last_step;       // extra shortened step, 0 if none
  double mass_drift;      // max_t |M(t) - M(0)| / M(0) over recorded samples
  double energy_drift;    // same for E^eps
  double discrete_energy_drift;  // CNFD E_h, NaN for splitting
  int max_fp_iters;       // CNFD, -1 for splitting
  double wall_seconds;
  std::string failure;    // non-empty if the run aborted
};

struct EnergyGap {
  double epsilon;
  double energy;
  double energy_ref;
  double gap;
};

struct ExactErrorRow {
  double t;
  NormKind norm;
  double error;
};

struct StudyReport {
  StudyConfig config;
  std::vector<ErrorRow> errors;
  std::vector<FitRow> fits;
  std::vector<RunRecord> runs;
  std::vector<EnergyGap> energy_gaps;
  std::vector<ExactErrorRow> exact_errors;
  /// Estimated error of the numerical reference per norm.
  std::map<NormKind, double> reference_floor;
  std::optional<Trajectory> trajectory;
  std::vector<std::string> notes;
  std::string timestamp;
  double wall_seconds = 0.0;
  std::vector<std::string> files_written;

  const FitRow* fit(Method m, NormKind n) const;
};

/// A study could not produce its reference or ran into a non-finite field.
/// Partial results have been flushed to the output directory.
class StudyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Error ladder against the analytic or a fine-step numerical reference.
StudyReport run_convergence(const StudyConfig& cfg);
/// u^eps against u^{eps_ref} at T for each epsilon, plus the energy gap at t = 0.
StudyReport run_epsilon_study(const StudyConfig& cfg);
/// Observable series, snapshots and conservation drift of a single run.
StudyReport run_long_time(const StudyConfig& cfg);
/// Dispatches on cfg.kind.
StudyReport run_study(const StudyConfig& cfg);

/// Result of marching u0 to T with step tau; see RunRecord for the step rule.
struct MarchResult {
  Trajectory trajectory;
  RunRecord record;
};

MarchResult march(const ComplexField& u0, Method method, double tau, double T,
                  const StudyConfig& cfg, const ModelParams& model, std::size_t observe_stride,
                  const std::vector<double>& snapshot_times = {});

/// report.txt contents.
std::string format_report(const StudyReport& r);

}  // namespace logse::harness
