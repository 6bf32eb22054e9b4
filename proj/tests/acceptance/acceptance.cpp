// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion, exit 1 if any fails
//   acceptance 3 7        run the listed criteria only

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "logse/cnfd.hpp"
#include "logse/flows.hpp"
#include "logse/harness/config.hpp"
#include "logse/harness/presets.hpp"
#include "logse/harness/study.hpp"
#include "logse/observables.hpp"
#include "logse/reference.hpp"
#include "logse/splitting.hpp"

using namespace logse;
using namespace logse::harness;
using Clock = std::chrono::steady_clock;

namespace {

// ---- pinned tolerances -------------------------------------------------------
constexpr double kC1MinRatio = 3.5;
constexpr double kC1MaxSeconds = 10.0;
constexpr double kC2LieLo = 0.85, kC2LieHi = 1.15;
constexpr double kC2SecondLo = 1.8, kC2SecondHi = 2.2;
constexpr double kC2MaxSeconds = 300.0;
constexpr double kC3Lo = 0.35, kC3Hi = 0.65;
constexpr int kC3Seeds = 8;
constexpr double kC4Lo = 0.7, kC4Hi = 1.3;
constexpr double kC5Mass = 1e-12;
constexpr double kC5Energy = 1e-6;
constexpr double kC5CnfdFactor = 100.0;
constexpr double kC6Sbp = 1e-12;
constexpr double kC6Quadrature = 1e-9;
constexpr double kC6FirstIntegral = 1e-8;
constexpr double kC7Stationary = 0.1;
constexpr int kC7MinMinima = 2;
constexpr double kC7Prominence = 1.0;
constexpr double kC7CollisionTau = 5e-4;
constexpr double kC7Energy = 1e-6;
constexpr double kC8Error = 1e-4;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

StudyConfig preset(const std::string& name) {
  auto c = parse_config_string(preset_config(name));
  c.output.clear();
  return c;
}

bool in_range(double x, double lo, double hi) { return x >= lo && x <= hi; }

// Local maxima of |u| above frac * max|u|, refined by a parabola through three nodes.
std::vector<double> peak_positions(const ComplexField& u, double frac = 0.3) {
  const auto& g = u.grid();
  const std::size_t M = u.size();
  std::vector<double> a(M);
  for (std::size_t j = 0; j < M; ++j) a[j] = std::abs(u[j]);
  const double top = *std::max_element(a.begin(), a.end());
  std::vector<double> out;
  for (std::size_t j = 0; j < M; ++j) {
    const double l = a[(j + M - 1) % M], c = a[j], r = a[(j + 1) % M];
    if (c < frac * top || c < l || c <= r) continue;
    const double denom = l - 2 * c + r;
    const double shift = denom != 0 ? 0.5 * (l - r) / denom : 0.0;
    out.push_back(g.node(j) + shift * g.h());
  }
  return out;
}

Trajectory long_run(const StudyConfig& c, const std::vector<double>& snaps, std::size_t stride) {
  const auto g = c.grid();
  return march(c.initial_field(g), c.methods.front(), c.tau, c.T, c, c.model, stride, snaps)
      .trajectory;
}

std::vector<double> uniform_times(double t0, double t1, double dt) {
  std::vector<double> ts;
  const auto n = static_cast<std::size_t>(std::llround((t1 - t0) / dt));
  for (std::size_t k = 0; k <= n; ++k) ts.push_back(t0 + static_cast<double>(k) * dt);
  return ts;
}

double max_rel_drift(const Trajectory& tr, double ObservableSample::*field) {
  const double ref = tr.observables.front().*field;
  double worst = 0;
  for (const auto& o : tr.observables) worst = std::max(worst, std::abs(o.*field - ref));
  return worst / std::abs(ref);
}

// ---- criteria ---------------------------------------------------------------

// Static Gausson: halving the step divides the L-infinity error by about four.
Outcome c1() {
  const auto t0 = Clock::now();
  const auto g = make_grid(-16, 16, 512);
  const ModelParams p{-1.0, 1e-15};
  GaussianParams gp;
  gp.b0 = std::pow(std::numbers::pi, -0.25);
  const auto u0 = exact_gaussian(gp, p.lambda, g, 0.0);
  const auto exact = exact_gaussian(gp, p.lambda, g, 1.0);
  const auto err = [&](double tau, std::size_t n) {
    return norm(error_field(evolve(u0, tau, n, SplitScheme::ST1, p, 0).final_field, exact),
                NormKind::Linf);
  };
  const double fine = err(1e-3, 1000), coarse = err(2e-3, 500);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const double ratio = coarse / fine;
  return {ratio >= kC1MinRatio && secs < kC1MaxSeconds,
          "Linf(2e-3)=" + fmt("%.3e", coarse) + " Linf(1e-3)=" + fmt("%.3e", fine) +
              " ratio=" + fmt("%.3f", ratio) + " (>= 3.5), " + fmt("%.2f", secs) + " s"};
}

// Fitted temporal orders on the moving Gausson.
Outcome c2() {
  const auto t0 = Clock::now();
  const auto r = run_convergence(preset("example1"));
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool ok = secs < kC2MaxSeconds;
  std::ostringstream d;
  for (Method m : {Method::LT, Method::ST1, Method::CNFD}) {
    const double lo = m == Method::LT ? kC2LieLo : kC2SecondLo;
    const double hi = m == Method::LT ? kC2LieHi : kC2SecondHi;
    for (NormKind n : {NormKind::L2, NormKind::H1}) {
      const auto* f = r.fit(m, n);
      const double s = f ? f->fit.slope : std::nan("");
      ok = ok && in_range(s, lo, hi);
      d << to_string(m) << '/' << to_string(n) << '=' << fmt("%.3f", s) << ' ';
    }
  }
  d << fmt("%.1f", secs) << " s";
  return {ok, d.str()};
}

// Lie splitting on rough data: mean L2 order over seeds.
Outcome c3() {
  auto c = preset("example2-theta1");
  c.methods = {Method::LT};
  double sum_l2 = 0, sum_h1 = 0;
  for (int s = 1; s <= kC3Seeds; ++s) {
    c.rough.seed = static_cast<std::uint64_t>(s);
    const auto r = run_convergence(c);
    sum_l2 += r.fit(Method::LT, NormKind::L2)->fit.slope;
    sum_h1 += r.fit(Method::LT, NormKind::H1)->fit.slope;
  }
  const double l2 = sum_l2 / kC3Seeds, h1 = sum_h1 / kC3Seeds;
  return {in_range(l2, kC3Lo, kC3Hi), "mean L2 order " + fmt("%.3f", l2) + " over " +
                                          std::to_string(kC3Seeds) +
                                          " seeds (target [0.35, 0.65]); mean H1 order " +
                                          fmt("%.3f", h1)};
}

// u^eps - u^{eps_ref} grows linearly in eps.
Outcome c4() {
  auto c = preset("example1");
  c.kind = StudyKind::EpsilonStudy;
  c.methods = {Method::ST1};
  c.tau = 1e-3;
  c.norms = {NormKind::L2};
  c.epsilons = {1e-2, 1e-3, 1e-4};
  c.epsilon_ref = 1e-15;
  const auto r = run_epsilon_study(c);
  const double s = r.fit(Method::ST1, NormKind::L2)->fit.slope;
  std::ostringstream d;
  d << "slope " << fmt("%.3f", s) << " errors";
  for (const auto& e : r.errors) d << ' ' << fmt("%.2e", e.epsilon) << ':' << fmt("%.3e", e.error);
  return {in_range(s, kC4Lo, kC4Hi), d.str()};
}

// Mass and energy drift of the splittings and of the conservative scheme.
Outcome c5() {
  auto c = preset("example1");
  const auto g = c.grid();
  const auto u0 = c.initial_field(g);
  std::ostringstream d;
  bool ok = true;
  for (Method m : {Method::LT, Method::ST1}) {
    const auto rec = march(u0, m, 1e-3, 10.0, c, c.model, 100).record;
    ok = ok && rec.steps == 10000 && rec.mass_drift < kC5Mass;
    d << to_string(m) << " mass " << fmt("%.2e", rec.mass_drift) << "; ";
  }
  const auto st = march(u0, Method::ST1, 1e-3, 1.0, c, c.model, 10).record;
  ok = ok && st.energy_drift < kC5Energy;
  d << "ST1 energy " << fmt("%.2e", st.energy_drift) << "; ";

  c.fp_tol = 1e-12;
  const auto cn = march(u0, Method::CNFD, 1e-3, 1.0, c, c.model, 10).record;
  const double bound = kC5CnfdFactor * c.fp_tol;
  ok = ok && cn.steps == 1000 && cn.mass_drift < bound && cn.discrete_energy_drift < bound;
  d << "CNFD M_h " << fmt("%.2e", cn.mass_drift) << " E_h " << fmt("%.2e", cn.discrete_energy_drift)
    << " (bound " << fmt("%.0e", bound) << ")";
  return {ok, d.str()};
}

// Scalar inequalities, contraction, summation by parts, quadrature and the width ODE.
Outcome c6() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0, 1);
  std::normal_distribution<double> N(0, 1);
  std::ostringstream d;

  std::size_t bad_pairs = 0;
  for (int i = 0; i < 1000000; ++i) {
    const double scale = std::pow(10.0, 4 * U(rng) - 3);
    const cplx z1{scale * N(rng), scale * N(rng)};
    const cplx z2{scale * N(rng), scale * N(rng)};
    const ModelParams p{U(rng) < 0.5 ? -1.0 : 1.0, U(rng)};
    const double lhs = std::abs(((phi_eps(z1, p) - phi_eps(z2, p)) * std::conj(z1 - z2)).imag());
    const double slack =
        1e-12 * (std::abs(phi_eps(z1, p)) + std::abs(phi_eps(z2, p))) * std::abs(z1 - z2);
    if (lhs > 2 * std::abs(p.lambda) * std::norm(z1 - z2) + slack) ++bad_pairs;
  }
  d << "inequality violations " << bad_pairs << "/1e6; ";

  std::size_t bad_fields = 0;
  const auto g = make_grid(-4, 4, 64);
  for (int i = 0; i < 1000; ++i) {
    const double tau = std::max(1e-6, U(rng));
    const ModelParams p{U(rng) < 0.5 ? -1.0 : 1.0, std::pow(10.0, -15 * U(rng))};
    const double scale = std::pow(10.0, 2 * U(rng) - 1);
    ComplexField f(g), h(g);
    for (std::size_t j = 0; j < g.size(); ++j) {
      f[j] = {scale * N(rng), scale * N(rng)};
      h[j] = f[j] + cplx{0.1 * scale * N(rng), 0.1 * scale * N(rng)};
    }
    const double before = norm(error_field(f, h), NormKind::L2);
    const double after = norm(
        error_field(step(f, tau, SplitScheme::LT, p), step(h, tau, SplitScheme::LT, p)),
        NormKind::L2);
    if (after > (1 + 2 * tau) * before * (1 + 1e-9)) ++bad_fields;
  }
  d << "contraction violations " << bad_fields << "/1e3; ";

  double sbp = 0;
  const auto g2 = make_grid(-2, 3, 80);
  for (int t = 0; t < 100; ++t) {
    ComplexField u(g2), v(g2);
    for (std::size_t j = 0; j < g2.size(); ++j) {
      u[j] = {N(rng), N(rng)};
      v[j] = {N(rng), N(rng)};
    }
    auto lu = second_difference(u);
    for (auto& z : lu) z = -z;
    const cplx a = inner_product(lu, v.values(), g2.h());
    const cplx b = inner_product(forward_difference(u), forward_difference(v), g2.h());
    sbp = std::max(sbp, std::abs(a - b) / std::abs(b));
  }
  d << "sbp " << fmt("%.1e", sbp) << "; ";

  boost::math::quadrature::tanh_sinh<double> ts;
  double quad = 0;
  for (int i = 0; i < 10000; ++i) {
    const ModelParams p{U(rng) < 0.5 ? -1.0 : 1.0, std::pow(10.0, -6 * U(rng))};
    const cplx z1{N(rng), N(rng)}, z2{N(rng), N(rng)};
    const double r1 = std::norm(z1), r2 = std::norm(z2);
    const double I = ts.integrate(
        [&](double th) {
          return 2 * p.lambda * std::log(p.epsilon + std::sqrt(th * r1 + (1 - th) * r2));
        },
        0.0, 1.0, 1e-14);
    const cplx q = I * (z1 + z2) / 2.0;
    quad = std::max(quad, std::abs(g_eps(z1, z2, p) - q) / std::max(1.0, std::abs(q)));
  }
  d << "G vs quadrature " << fmt("%.1e", quad) << "; ";

  double drift = 0;
  for (double lambda : {-1.0, 1.0}) {
    for (cplx a0 : {cplx{1, 0}, cplx{2, 0}, cplx{0.5, 0.3}}) {
      GaussianParams gp;
      gp.a0 = a0;
      auto s = initial_ode_state(gp);
      const double I0 = ode_first_integral(s, gp, lambda);
      for (int k = 0; k < 20000; ++k) {
        s = rk4_step(s, gp, lambda, 1e-3);
        drift = std::max(drift, std::abs(ode_first_integral(s, gp, lambda) - I0) / std::abs(I0));
      }
    }
  }
  d << "first integral " << fmt("%.1e", drift);

  return {bad_pairs == 0 && bad_fields == 0 && sbp < kC6Sbp && quad < kC6Quadrature &&
              drift < kC6FirstIntegral,
          d.str()};
}

// Two-Gausson dynamics on shrunken domains.
Outcome c7() {
  std::ostringstream d;
  bool ok = true;

  {  // static pair
    const auto c = preset("example3-casei");
    const auto tr = long_run(c, uniform_times(0, c.T, 0.5), 0);
    double worst = 0;
    bool two = true;
    for (const auto& s : tr.snapshots) {
      const auto pk = peak_positions(s.field);
      if (pk.size() != 2) {
        two = false;
        continue;
      }
      worst = std::max({worst, std::abs(pk[0] + 5), std::abs(pk[1] - 5)});
    }
    ok = ok && two && worst < kC7Stationary;
    d << "i: max peak shift " << fmt("%.2e", worst) << (two ? "" : " (peak count changed)")
      << "; ";
  }

  {  // attracting pair
    const auto c = preset("example3-caseii");
    const auto tr = long_run(c, uniform_times(0, c.T, 0.05), 0);
    std::vector<double> dist;
    for (const auto& s : tr.snapshots) {
      const auto pk = peak_positions(s.field);
      dist.push_back(pk.size() >= 2 ? pk.back() - pk.front() : 0.0);
    }
    // Minima with prominence: fall by kC7Prominence, then recover by as much.
    int minima = 0;
    double hi = dist.front(), lo = dist.front();
    bool falling = false;
    for (double x : dist) {
      if (!falling) {
        hi = std::max(hi, x);
        if (x < hi - kC7Prominence) falling = true, lo = x;
      } else {
        lo = std::min(lo, x);
        if (x > lo + kC7Prominence) falling = false, hi = x, ++minima;
      }
    }
    ok = ok && minima >= kC7MinMinima;
    const auto [dmin, dmax] = std::minmax_element(dist.begin(), dist.end());
    d << "ii: distance range [" << fmt("%.2f", *dmin) << ", " << fmt("%.2f", *dmax) << "], " << minima
      << " local minima; ";
  }

  {  // head-on collision
    // Strang energy error is O(tau^2); the preset step leaves it right at the bound.
    auto c = preset("example3-caseiii");
    c.tau = kC7CollisionTau;
    const auto tr = long_run(c, {c.T}, 100);
    const auto& u = tr.final_field;
    double left = 0, right = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      (u.grid().node(j) < 0 ? left : right) = std::max(u.grid().node(j) < 0 ? left : right,
                                                       std::abs(u[j]));
    }
    const double drift = max_rel_drift(tr, &ObservableSample::energy);
    ok = ok && left > 0.5 && right > 0.5 && drift < kC7Energy;
    d << "iii: peaks after collision " << fmt("%.3f", left) << '/' << fmt("%.3f", right)
      << ", energy drift " << fmt("%.2e", drift);
  }
  return {ok, d.str()};
}

// Spreading Gaussian against the exact solution.
Outcome c8() {
  auto c = preset("example4-caseix");
  c.tau = 1e-4;
  const auto times = uniform_times(1.0, c.T, 0.1);
  const auto tr = long_run(c, times, 0);
  const auto& gp = c.gaussians.terms.front();

  bool r_up = true;
  double r_prev = 0;
  for (double t : times) {
    const double r = integrate_ode(gp, c.model.lambda, t, 1e-4).r;
    r_up = r_up && r > r_prev;
    r_prev = r;
  }
  bool linf_down = true;
  double prev = INFINITY;
  for (const auto& s : tr.snapshots) {
    const double m = norm(s.field, NormKind::Linf);
    linf_down = linf_down && m < prev;
    prev = m;
  }
  const auto exact = exact_gaussian(gp, c.model.lambda, c.grid(), c.T);
  const double err = norm(error_field(tr.final_field, exact), NormKind::L2);
  return {r_up && linf_down && err < kC8Error,
          std::string("r increasing ") + (r_up ? "yes" : "no") + ", Linf decreasing after t=1 " +
              (linf_down ? "yes" : "no") + ", L2 error at T=5 " + fmt("%.3e", err)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "Gausson stationarity, Strang halving ratio", c1},
      {2, "temporal orders on the moving Gausson", c2},
      {3, "Lie order reduction on rough data", c3},
      {4, "regularization error linear in epsilon", c4},
      {5, "conservation of mass and energy", c5},
      {6, "scalar and analytic property suites", c6},
      {7, "two-Gausson dynamics", c7},
      {8, "spreading Gaussian for lambda > 0", c8},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::stoi(argv[i]));

  bool all_pass = true;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("criterion %d %s: %s | %s [%.1f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
