#include "logse/harness/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "logse/cnfd.hpp"
#include "logse/harness/io.hpp"
#include "logse/reference.hpp"

namespace logse::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Runs f(0..n-1) on up to `workers` threads. f must not throw.
template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& f) {
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
  };
  const std::size_t threads = std::min<std::size_t>(workers, n);
  if (threads <= 1) {
    body();
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
}

double max_relative_drift(const std::vector<ObservableSample>& obs, double ObservableSample::*field) {
  if (obs.empty()) return kNaN;
  const double ref = obs.front().*field;
  double worst = 0.0;
  for (const auto& s : obs) worst = std::max(worst, std::abs(s.*field - ref));
  return ref != 0.0 ? worst / std::abs(ref) : worst;
}

CnfdParams cnfd_params_for(const StudyConfig& cfg, const ModelParams& model) {
  return {model, cfg.fp_tol, cfg.max_iter, cfg.shift};
}

// Grid with h = tau / tau_over_h on [a, b).
Grid1D coupled_grid(const StudyConfig& cfg, double tau) {
  const double target = (cfg.b - cfg.a) * cfg.tau_over_h / tau;
  auto M = static_cast<std::size_t>(std::llround(target));
  if (M % 2) ++M;
  return make_grid(cfg.a, cfg.b, M);
}

std::string runs_csv(const std::vector<RunRecord>& runs) {
  std::ostringstream o;
  o << "scheme,epsilon,tau,h,M,steps,tau_used,last_step,mass_drift,energy_drift,"
       "discrete_energy_drift,max_fp_iters,failed\n";
  for (const auto& r : runs) {
    o << to_string(r.method) << ',' << format_double(r.epsilon) << ',' << format_double(r.tau)
      << ',' << format_double(r.h) << ',' << r.M << ',' << r.steps << ','
      << format_double(r.tau_used) << ',' << format_double(r.last_step) << ','
      << format_double(r.mass_drift) << ',' << format_double(r.energy_drift) << ','
      << format_double(r.discrete_energy_drift) << ',' << r.max_fp_iters << ','
      << (r.failure.empty() ? 0 : 1) << '\n';
  }
  return o.str();
}

bool row_less(const ErrorRow& x, const ErrorRow& y) {
  if (x.method != y.method) return x.method < y.method;
  if (x.epsilon != y.epsilon) return x.epsilon > y.epsilon;
  if (x.tau != y.tau) return x.tau > y.tau;
  return x.norm < y.norm;
}

bool run_less(const RunRecord& x, const RunRecord& y) {
  if (x.method != y.method) return x.method < y.method;
  if (x.epsilon != y.epsilon) return x.epsilon > y.epsilon;
  return x.tau > y.tau;
}

void write_file(StudyReport& r, const std::string& name, const std::string& text) {
  const auto path = std::filesystem::path(r.config.output) / name;
  write_text_file(path, text);
  r.files_written.push_back(path.string());
}

void finish(StudyReport& r, Clock::time_point t0) {
  r.wall_seconds = seconds_since(t0);
  if (r.config.output.empty()) return;
  write_file(r, "runs.csv", runs_csv(r.runs));
  write_file(r, "report.txt", format_report(r));
}

std::vector<ErrorRow> measure(Method m, double eps, double tau, const ComplexField& u,
                              const ComplexField& ref, const std::vector<NormKind>& norms) {
  std::vector<ErrorRow> rows;
  const auto e = error_field(u, ref);
  for (NormKind n : norms) rows.push_back({m, eps, tau, u.grid().h(), n, norm(e, n)});
  return rows;
}

// One march per (method, step) pair, run on the worker pool.
struct Task {
  Method method;
  double tau;
  Grid1D grid;
  ModelParams model;
};

struct TaskResult {
  RunRecord record;
  std::vector<ErrorRow> rows;
};

}  // namespace

OrderFit fit_order(const std::vector<double>& xs, const std::vector<double>& errors, double floor) {
  if (xs.size() != errors.size()) throw ConfigError("fit_order: size mismatch");
  if (xs.size() < 3) throw ConfigError("fit_order: at least 3 points required");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(errors[i] > 0.0)) {
      throw ConfigError("fit_order: all steps and errors must be positive");
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (errors[i] >= 10.0 * floor) keep.push_back(i);
  }
  if (keep.size() < 2) {
    keep.resize(xs.size());
    std::iota(keep.begin(), keep.end(), 0);
  }

  OrderFit fit;
  fit.points_total = xs.size();
  fit.points_used = keep.size();
  const double n = static_cast<double>(keep.size());
  double mx = 0.0, my = 0.0;
  for (auto i : keep) {
    mx += std::log(xs[i]);
    my += std::log(errors[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (auto i : keep) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[i]) - my);
  }
  if (sxx == 0.0) return fit;  // all x equal
  fit.slope = sxy / sxx;
  double ss = 0.0;
  for (auto i : keep) {
    const double r = std::log(errors[i]) - (my + fit.slope * (std::log(xs[i]) - mx));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

const FitRow* StudyReport::fit(Method m, NormKind n) const {
  for (const auto& f : fits) {
    if (f.method == m && f.norm == n) return &f;
  }
  return nullptr;
}

MarchResult march(const ComplexField& u0, Method method, double tau, double T,
                  const StudyConfig& cfg, const ModelParams& model, std::size_t observe_stride,
                  const std::vector<double>& snapshot_times) {
  const auto t0 = Clock::now();
  const Grid1D& grid = u0.grid();
  RunRecord rec{method, model.epsilon, tau, grid.h(), grid.size(), 0, tau, 0.0, kNaN, kNaN, kNaN,
                -1, 0.0, {}};

  auto n = static_cast<std::size_t>(std::llround(T / tau));
  if (n >= 1 && std::abs(static_cast<double>(n) * tau - T) <= 1e-6 * T) {
    rec.tau_used = T / static_cast<double>(n);
  } else {
    n = static_cast<std::size_t>(std::floor(T / tau));
    rec.last_step = T - static_cast<double>(n) * tau;
  }
  rec.steps = n;

  const double t_full = static_cast<double>(n) * rec.tau_used;
  std::vector<double> early, late;
  for (double t : snapshot_times) {
    (rec.last_step > 0.0 && t > t_full + 0.5 * rec.last_step ? late : early).push_back(t);
  }

  const auto cp = cnfd_params_for(cfg, model);
  Trajectory traj{{}, {}, {}, u0, 0.0};
  if (n > 0) {
    traj = method == Method::CNFD
               ? cnfd_evolve(u0, rec.tau_used, n, cp, observe_stride, early)
               : evolve(u0, rec.tau_used, n, split_scheme(method), model, observe_stride, early);
  } else {
    auto s = observe(u0, 0.0, model);
    if (method == Method::CNFD) s.discrete_energy = discrete_energy(u0, model);
    traj.times.push_back(0.0);
    traj.observables.push_back(s);
    traj.snapshots.assign(early.size(), Snapshot{0.0, u0});
  }

  if (rec.last_step > 0.0) {
    ComplexField before = traj.final_field;
    int iters = -1;
    double e_h = kNaN;
    if (method == Method::CNFD) {
      CnfdState st{traj.final_field, n, 0, 0.0};
      try {
        st = cnfd_step(st, rec.last_step, cp);
      } catch (const CnfdStepFailure& e) {
        throw EvolveFailure(n + 1, e.what(), before, t_full);
      }
      traj.final_field = st.field;
      iters = static_cast<int>(st.last_iter_count);
      e_h = discrete_energy(st.field, model);
    } else {
      SplitStepper stepper(grid, split_scheme(method), model);
      stepper.step(traj.final_field.values(), rec.last_step);
    }
    if (!traj.final_field.all_finite()) {
      throw EvolveFailure(n + 1, "non-finite field in the final shortened step", before, t_full);
    }
    auto s = observe(traj.final_field, T, model);
    s.fp_iters = iters;
    s.discrete_energy = e_h;
    traj.times.push_back(T);
    traj.observables.push_back(s);
    for (std::size_t i = 0; i < late.size(); ++i) traj.snapshots.push_back({T, traj.final_field});
    traj.final_time = T;
  }

  rec.mass_drift = max_relative_drift(traj.observables, &ObservableSample::mass);
  rec.energy_drift = max_relative_drift(traj.observables, &ObservableSample::energy);
  if (method == Method::CNFD) {
    rec.discrete_energy_drift =
        max_relative_drift(traj.observables, &ObservableSample::discrete_energy);
    for (const auto& s : traj.observables) rec.max_fp_iters = std::max(rec.max_fp_iters, s.fp_iters);
  }
  rec.wall_seconds = seconds_since(t0);
  return {std::move(traj), rec};
}

StudyReport run_convergence(const StudyConfig& cfg) {
  cfg.validate();
  if (cfg.kind != StudyKind::Convergence) throw ConfigError("run_convergence: wrong study kind");
  const auto t0 = Clock::now();
  StudyReport report;
  report.config = cfg;
  report.timestamp = utc_timestamp();

  const Grid1D grid = cfg.grid();
  const bool analytic = cfg.reference == ReferenceKind::Analytic;

  std::vector<Task> tasks;
  for (Method m : cfg.methods) {
    const bool own_ladder = m == Method::CNFD && !cfg.cnfd_taus.empty();
    for (double tau : own_ladder ? cfg.cnfd_taus : cfg.taus) {
      const bool coupled = m == Method::CNFD && cfg.tau_over_h > 0.0;
      tasks.push_back({m, tau, coupled ? coupled_grid(cfg, tau) : grid, cfg.model});
    }
  }

  auto flush_and_throw = [&](const std::string& what) {
    report.notes.push_back("study aborted: " + what);
    finish(report, t0);
    throw StudyError(what);
  };

  // Reference fields keyed by grid size.
  std::map<std::size_t, ComplexField> refs;
  try {
    if (analytic) {
      const auto& gp = cfg.gaussians.terms.front();
      for (const auto& t : tasks) {
        if (!refs.count(t.grid.size())) {
          refs.emplace(t.grid.size(), exact_gaussian(gp, cfg.model.lambda, t.grid, cfg.T));
        }
      }
    } else {
      double tau_min = std::numeric_limits<double>::infinity();
      for (const auto& t : tasks) tau_min = std::min(tau_min, t.tau);
      const double tau_ref = tau_min * cfg.reference_tau_factor;
      const auto u0 = cfg.initial_field(grid);
      auto fine = march(u0, Method::ST1, tau_ref, cfg.T, cfg, cfg.model, 0);
      auto coarse = march(u0, Method::ST1, 2.0 * tau_ref, cfg.T, cfg, cfg.model, 0);
      const auto diff = error_field(coarse.trajectory.final_field, fine.trajectory.final_field);
      for (NormKind n : cfg.norms) report.reference_floor[n] = norm(diff, n);
      refs.emplace(grid.size(), std::move(fine.trajectory.final_field));
      std::ostringstream note;
      note << "numerical reference: ST1 with tau_ref = " << format_double(tau_ref)
           << " on the study grid; floor = ||u(tau_ref) - u(2 tau_ref)||, fits drop errors below "
              "10 x floor";
      report.notes.push_back(note.str());
    }
  } catch (const std::exception& e) {
    flush_and_throw(std::string("reference generation failed: ") + e.what());
  }

  std::vector<TaskResult> results(tasks.size());
  parallel_for(tasks.size(), cfg.workers, [&](std::size_t i) {
    const auto& task = tasks[i];
    auto& out = results[i];
    const auto t_start = Clock::now();
    try {
      const auto u0 = cfg.initial_field(task.grid);
      auto mr = march(u0, task.method, task.tau, cfg.T, cfg, task.model, 0);
      out.record = mr.record;
      out.rows = measure(task.method, task.model.epsilon, task.tau, mr.trajectory.final_field,
                         refs.at(task.grid.size()), cfg.norms);
    } catch (const std::exception& e) {
      out.record = RunRecord{task.method, task.model.epsilon, task.tau, task.grid.h(),
                             task.grid.size(), 0, task.tau, 0.0, kNaN, kNaN, kNaN, -1,
                             seconds_since(t_start), e.what()};
    }
  });

  for (auto& r : results) {
    report.runs.push_back(r.record);
    report.errors.insert(report.errors.end(), r.rows.begin(), r.rows.end());
    if (!r.record.failure.empty()) {
      report.notes.push_back(to_string(r.record.method) + " tau=" +
                             format_double(r.record.tau) + " failed: " + r.record.failure);
    }
    if (r.record.last_step > 0.0) {
      report.notes.push_back(to_string(r.record.method) + " tau=" + format_double(r.record.tau) +
                             " does not divide T; final step shortened to " +
                             format_double(r.record.last_step));
    }
  }
  std::sort(report.errors.begin(), report.errors.end(), row_less);
  std::sort(report.runs.begin(), report.runs.end(), run_less);

  for (Method m : cfg.methods) {
    for (NormKind n : cfg.norms) {
      std::vector<double> xs, es;
      for (const auto& row : report.errors) {
        if (row.method == m && row.norm == n && row.error > 0.0) {
          xs.push_back(row.tau);
          es.push_back(row.error);
        }
      }
      if (xs.size() < 3) {
        report.notes.push_back("no order fit for " + to_string(m) + "/" + to_string(n) +
                               ": fewer than 3 usable points");
        continue;
      }
      const double floor = analytic ? 0.0 : report.reference_floor.at(n);
      FitRow fr{m, n, fit_order(xs, es, floor), true};
      if (analytic) {
        for (std::size_t i = 1; i < es.size(); ++i) {
          if (es[i] > 1.05 * es[i - 1]) fr.monotone = false;
        }
        if (!fr.monotone) {
          report.notes.push_back("monotonicity gate failed for " + to_string(m) + "/" +
                                 to_string(n) + ": an error grew by more than 5% as tau shrank");
        }
      } else if (floor >= es.front()) {
        report.notes.push_back("reference floor " + format_double(floor) + " for " +
                               to_string(m) + "/" + to_string(n) +
                               " is not below the coarsest error; order fit is unreliable");
      }
      report.fits.push_back(fr);
    }
  }

  if (!cfg.output.empty()) {
    std::ostringstream o;
    o << "scheme,tau,h,norm,error\n";
    for (const auto& r : report.errors) {
      o << to_string(r.method) << ',' << format_double(r.tau) << ',' << format_double(r.h) << ','
        << to_string(r.norm) << ',' << format_double(r.error) << '\n';
    }
    write_file(report, "convergence.csv", o.str());
  }
  finish(report, t0);
  return report;
}

StudyReport run_epsilon_study(const StudyConfig& cfg) {
  cfg.validate();
  if (cfg.kind != StudyKind::EpsilonStudy) throw ConfigError("run_epsilon_study: wrong study kind");
  const auto t0 = Clock::now();
  StudyReport report;
  report.config = cfg;
  report.timestamp = utc_timestamp();

  const Grid1D grid = cfg.grid();
  const auto u0 = cfg.initial_field(grid);
  const ModelParams ref_model{cfg.model.lambda, cfg.epsilon_ref};

  const double e_ref = energy_regularized(u0, ref_model);
  for (double eps : cfg.epsilons) {
    const double e = energy_regularized(u0, {cfg.model.lambda, eps});
    report.energy_gaps.push_back({eps, e, e_ref, e - e_ref});
  }

  std::map<Method, ComplexField> refs;
  try {
    for (Method m : cfg.methods) {
      auto mr = march(u0, m, cfg.tau, cfg.T, cfg, ref_model, 0);
      refs.emplace(m, std::move(mr.trajectory.final_field));
      report.runs.push_back(mr.record);
    }
  } catch (const std::exception& e) {
    report.notes.push_back(std::string("study aborted: reference generation failed: ") + e.what());
    finish(report, t0);
    throw StudyError(std::string("reference generation failed: ") + e.what());
  }

  std::vector<Task> tasks;
  for (Method m : cfg.methods) {
    for (double eps : cfg.epsilons) tasks.push_back({m, cfg.tau, grid, {cfg.model.lambda, eps}});
  }
  std::vector<TaskResult> results(tasks.size());
  parallel_for(tasks.size(), cfg.workers, [&](std::size_t i) {
    const auto& task = tasks[i];
    const auto t_start = Clock::now();
    try {
      auto mr = march(u0, task.method, task.tau, cfg.T, cfg, task.model, 0);
      results[i].record = mr.record;
      results[i].rows = measure(task.method, task.model.epsilon, task.tau,
                                mr.trajectory.final_field, refs.at(task.method), cfg.norms);
    } catch (const std::exception& e) {
      results[i].record = RunRecord{task.method, task.model.epsilon, task.tau, grid.h(),
                                    grid.size(), 0, task.tau, 0.0, kNaN, kNaN, kNaN, -1,
                                    seconds_since(t_start), e.what()};
    }
  });
  for (auto& r : results) {
    report.runs.push_back(r.record);
    report.errors.insert(report.errors.end(), r.rows.begin(), r.rows.end());
    if (!r.record.failure.empty()) {
      report.notes.push_back(to_string(r.record.method) + " epsilon=" +
                             format_double(r.record.epsilon) + " failed: " + r.record.failure);
    }
  }
  std::sort(report.errors.begin(), report.errors.end(), row_less);
  std::sort(report.runs.begin(), report.runs.end(), run_less);

  for (Method m : cfg.methods) {
    for (NormKind n : cfg.norms) {
      std::vector<double> xs, es;
      for (const auto& row : report.errors) {
        if (row.method == m && row.norm == n && row.error > 0.0) {
          xs.push_back(row.epsilon);
          es.push_back(row.error);
        }
      }
      if (xs.size() < 3) {
        report.notes.push_back("no epsilon slope for " + to_string(m) + "/" + to_string(n) +
                               ": fewer than 3 nonzero errors");
        continue;
      }
      report.fits.push_back({m, n, fit_order(xs, es, 0.0), true});
    }
  }

  if (!cfg.output.empty()) {
    std::ostringstream o;
    o << "scheme,epsilon,tau,h,norm,error\n";
    for (const auto& r : report.errors) {
      o << to_string(r.method) << ',' << format_double(r.epsilon) << ',' << format_double(r.tau)
        << ',' << format_double(r.h) << ',' << to_string(r.norm) << ','
        << format_double(r.error) << '\n';
    }
    write_file(report, "epsilon.csv", o.str());
    std::ostringstream g;
    g << "epsilon,E_eps,E_ref,gap\n";
    for (const auto& e : report.energy_gaps) {
      g << format_double(e.epsilon) << ',' << format_double(e.energy) << ','
        << format_double(e.energy_ref) << ',' << format_double(e.gap) << '\n';
    }
    write_file(report, "energy_gap.csv", g.str());
  }
  finish(report, t0);
  return report;
}

StudyReport run_long_time(const StudyConfig& cfg) {
  cfg.validate();
  if (cfg.kind != StudyKind::LongTime) throw ConfigError("run_long_time: wrong study kind");
  const auto t0 = Clock::now();
  StudyReport report;
  report.config = cfg;
  report.timestamp = utc_timestamp();

  const Grid1D grid = cfg.grid();
  const auto u0 = cfg.initial_field(grid);
  const Method m = cfg.methods.front();

  std::optional<MarchResult> result;
  try {
    result = march(u0, m, cfg.tau, cfg.T, cfg, cfg.model, cfg.observe_stride, cfg.snapshot_times);
  } catch (const EvolveFailure& e) {
    report.notes.push_back("run aborted at step " + std::to_string(e.step()) + ": " + e.what() +
                           "; last finite field (t=" + format_double(e.last_good_time()) +
                           ") persisted");
    if (!cfg.output.empty()) {
      write_file(report, snapshot_filename(e.last_good_time()),
                 [&] {
                   std::ostringstream o;
                   write_snapshot(o, e.last_good(), e.last_good_time(), cfg.model);
                   return o.str();
                 }());
    }
    finish(report, t0);
    throw StudyError(e.what());
  }
  auto& mr = *result;

  report.runs.push_back(mr.record);
  if (mr.record.last_step > 0.0) {
    report.notes.push_back("tau does not divide T; final step shortened to " +
                           format_double(mr.record.last_step));
  }

  if (cfg.exact_errors) {
    const auto& gp = cfg.gaussians.terms.front();
    for (const auto& snap : mr.trajectory.snapshots) {
      const auto exact = exact_gaussian(gp, cfg.model.lambda, grid, snap.t);
      const auto e = error_field(snap.field, exact);
      for (NormKind n : cfg.norms) report.exact_errors.push_back({snap.t, n, norm(e, n)});
    }
  }

  if (!cfg.output.empty()) {
    std::ostringstream o;
    write_observables(o, mr.trajectory.observables, m == Method::CNFD);
    write_file(report, "observables.csv", o.str());
    for (const auto& snap : mr.trajectory.snapshots) {
      std::ostringstream s;
      write_snapshot(s, snap.field, snap.t, cfg.model);
      write_file(report, snapshot_filename(snap.t), s.str());
    }
    if (cfg.exact_errors) {
      std::ostringstream x;
      x << "t,norm,error\n";
      for (const auto& r : report.exact_errors) {
        x << format_double(r.t) << ',' << to_string(r.norm) << ',' << format_double(r.error)
          << '\n';
      }
      write_file(report, "exact_errors.csv", x.str());
    }
  }
  report.trajectory = std::move(mr.trajectory);
  finish(report, t0);
  return report;
}

StudyReport run_study(const StudyConfig& cfg) {
  switch (cfg.kind) {
    case StudyKind::Convergence: return run_convergence(cfg);
    case StudyKind::EpsilonStudy: return run_epsilon_study(cfg);
    case StudyKind::LongTime: return run_long_time(cfg);
  }
  throw ConfigError("unknown study kind");
}

std::string format_report(const StudyReport& r) {
  std::ostringstream o;
  const auto& c = r.config;
  o << "logse study report\n";
  o << "generated: " << r.timestamp << '\n';
  o << "kind: " << to_string(c.kind) << '\n';
  if (!c.note.empty()) o << "note: " << c.note << '\n';
  if (c.initial == InitialKind::RandomHs) {
    o << "rng: " << kRoughDataRng << '\n';
    o << "seed: " << c.rough.seed << '\n';
  }
  o << "wall_seconds: " << format_double(r.wall_seconds) << '\n';

  if (!r.fits.empty()) {
    o << "\n[fitted orders]\n";
    const char* against = c.kind == StudyKind::EpsilonStudy ? "epsilon" : "tau";
    for (const auto& f : r.fits) {
      o << to_string(f.method) << ' ' << to_string(f.norm) << ": slope vs " << against << " = "
        << format_double(f.fit.slope) << ", residual = " << format_double(f.fit.residual)
        << ", points = " << f.fit.points_used << '/' << f.fit.points_total;
      if (c.kind == StudyKind::Convergence && c.reference == ReferenceKind::Analytic) {
        o << ", monotone = " << (f.monotone ? "yes" : "no");
      }
      o << '\n';
    }
  }
  if (!r.reference_floor.empty()) {
    o << "\n[reference floor]\n";
    for (const auto& [n, v] : r.reference_floor) o << to_string(n) << ": " << format_double(v) << '\n';
  }
  if (!r.energy_gaps.empty()) {
    o << "\n[energy gap E^eps(u0) - E^eps_ref(u0)]\n";
    for (const auto& g : r.energy_gaps) {
      o << "epsilon = " << format_double(g.epsilon) << ": " << format_double(g.gap) << '\n';
    }
  }
  if (!r.runs.empty()) {
    o << "\n[runs]\n";
    for (const auto& run : r.runs) {
      o << to_string(run.method) << " eps=" << format_double(run.epsilon)
        << " tau=" << format_double(run.tau) << " h=" << format_double(run.h)
        << " steps=" << run.steps << " mass_drift=" << format_double(run.mass_drift)
        << " energy_drift=" << format_double(run.energy_drift);
      if (run.method == Method::CNFD) {
        o << " discrete_energy_drift=" << format_double(run.discrete_energy_drift)
          << " max_fp_iters=" << run.max_fp_iters;
      }
      o << " wall_seconds=" << format_double(run.wall_seconds);
      if (!run.failure.empty()) o << " FAILED";
      o << '\n';
    }
  }
  if (!r.notes.empty()) {
    o << "\n[notes]\n";
    for (const auto& n : r.notes) o << "- " << n << '\n';
  }
  o << "\n[config]\n" << to_config_text(c);
  return o.str();
}

}  // namespace logse::harness
