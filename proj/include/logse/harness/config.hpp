#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "logse/cnfd.hpp"
#include "logse/grid.hpp"
#include "logse/initdata.hpp"
#include "logse/observables.hpp"
#include "logse/splitting.hpp"

namespace logse::harness {

enum class StudyKind { Convergence, EpsilonStudy, LongTime };
enum class Method { LT, ST1, ST2, CNFD };
enum class InitialKind { GaussianSum, RandomHs };
enum class ReferenceKind { Analytic, Numerical };

StudyKind parse_study_kind(const std::string& s);
std::string to_string(StudyKind k);
/// Accepts LT/LTSP, ST1/STSP, ST2 and CNFD.
Method parse_method(const std::string& s);
std::string to_string(Method m);
SplitScheme split_scheme(Method m);
InitialKind parse_initial_kind(const std::string& s);
std::string to_string(InitialKind k);
ReferenceKind parse_reference_kind(const std::string& s);
std::string to_string(ReferenceKind k);
CnfdShift parse_cnfd_shift(const std::string& s);
std::string to_string(CnfdShift s);

/// Declarative description of one experiment. See README for the file format.
struct StudyConfig {
  StudyKind kind = StudyKind::Convergence;
  std::vector<Method> methods{Method::ST1};
  double T = 1.0;
  std::string output;  // empty: nothing written
  unsigned workers = 1;
  std::string note;

  double a = -16.0;
  double b = 16.0;
  std::size_t M = 512;
  ModelParams model;

  InitialKind initial = InitialKind::GaussianSum;
  GaussianSumSpec gaussians;
  RoughDataSpec rough;

  /// Splitting ladder (convergence).
  std::vector<double> taus;
  /// Fixed step (epsilon_study, long_time).
  double tau = 1e-3;
  std::size_t observe_stride = 1;
  std::vector<double> snapshot_times;

  std::vector<NormKind> norms{NormKind::L2};
  ReferenceKind reference = ReferenceKind::Analytic;
  double reference_tau_factor = 0.01;

  double fp_tol = 1e-12;
  std::size_t max_iter = 100;
  CnfdShift shift = CnfdShift::Midpoint;
  /// CNFD ladder; empty means reuse `taus`.
  std::vector<double> cnfd_taus;
  /// > 0 couples the CNFD grid to the step: h = tau / tau_over_h.
  double tau_over_h = 0.0;

  std::vector<double> epsilons;
  double epsilon_ref = 1e-15;

  /// long_time: also write errors against the exact Gaussian at snapshots.
  bool exact_errors = false;

  Grid1D grid() const { return Grid1D(a, b, M); }
  CnfdParams cnfd_params() const { return {model, fp_tol, max_iter, shift}; }
  ComplexField initial_field(const Grid1D& g) const;
  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

/// Parses "p/q" fractions as well as plain decimals.
double parse_number(const std::string& s);

StudyConfig parse_config(std::istream& in);
StudyConfig parse_config_string(const std::string& text);
StudyConfig load_config(const std::filesystem::path& path);

/// Canonical INI text; parse_config_string(to_config_text(c)) == c.
std::string to_config_text(const StudyConfig& c);

}  // namespace logse::harness
