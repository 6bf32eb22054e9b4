#include "logse/harness/presets.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "logse/grid.hpp"
#include "logse/harness/io.hpp"

namespace logse::harness {

namespace {

struct Term {
  double b, a, x0, v;
};

struct LongTimeCase {
  std::string name;
  std::string description;
  double lambda;
  std::vector<Term> terms;
  // desk: domain, T, snapshot spacing
  double desk_L_left, desk_L_right;
  std::size_t desk_M;
  double desk_T;
  double desk_dt_snap;
  bool exact = false;
};

std::string terms_text(const std::vector<Term>& terms) {
  std::ostringstream o;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    o << "term" << i + 1 << " = b=" << format_double(t.b) << ", a=" << format_double(t.a)
      << ", x0=" << format_double(t.x0) << ", v=" << format_double(t.v) << '\n';
  }
  return o.str();
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + format_double(xs[i]);
  return s;
}

std::vector<double> fraction_ladder(double first_den, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(1.0 / (first_den * std::pow(2.0, k)));
  return out;
}

// tau = 10^{1-j} / (10 + k), j = 1..3, k = 0..90, deduplicated and decreasing.
std::vector<double> dense_ladder() {
  std::set<double, std::greater<>> taus;
  for (int j = 1; j <= 3; ++j) {
    for (int k = 0; k <= 90; ++k) taus.insert(std::pow(10.0, 1 - j) / (10.0 + k));
  }
  return {taus.begin(), taus.end()};
}

std::vector<double> cnfd_ladder(int jmax) {
  std::vector<double> out;
  for (int j = 0; j <= jmax; ++j) out.push_back(std::pow(2.0, -j) / 5.0);
  return out;
}

std::vector<double> uniform_times(double T, double dt) {
  std::vector<double> out;
  const auto n = static_cast<int>(std::llround(T / dt));
  for (int i = 0; i <= n; ++i) out.push_back(i * dt);
  return out;
}

std::string example1(bool full) {
  const double lambda = -1.0;
  const double b0 = std::pow(-lambda / std::numbers::pi, 0.25);
  std::ostringstream o;
  o << "[study]\nkind = convergence\nschemes = LT, ST1, CNFD\nT = 1\noutput = out/example1\n"
    << "workers = 1\n"
    << "note = " << (full ? "full scale: h = 1/256, dense step ladder"
                           : "desk scale: h = 1/16, four-step splitting ladder")
    << "\n\n[grid]\na = -16\nb = 16\nM = " << (full ? 8192 : 512) << "\n\n"
    << "[model]\nlambda = -1\nepsilon = 1e-15\n\n"
    << "[initial]\ntype = gaussian_sum\n"
    << terms_text({{b0, -lambda, 0.0, 1.0}}) << '\n'
    << "[time]\ntaus = " << (full ? join(dense_ladder()) : "1/40, 1/80, 1/160, 1/320") << "\n\n"
    << "[convergence]\nnorms = L2, H1\nreference = analytic\n\n"
    << "[cnfd]\nfp_tol = 1e-12\nmax_iter = 1000\nshift = midpoint\ntaus = "
    << join(cnfd_ladder(full ? 7 : 5)) << "\ntau_over_h = 0.4\n";
  return o.str();
}

std::string example2(int theta, bool full) {
  std::ostringstream o;
  o << "[study]\nkind = convergence\nschemes = LT, ST1, CNFD\nT = 1\noutput = out/example2-theta"
    << theta << "\nworkers = 1\n"
    << "note = " << (full ? "full scale: h = pi/2^15, dense step ladder"
                           : "desk scale: M = 2^12, six-step ladder")
    << "\n\n[grid]\na = " << format_double(-std::numbers::pi)
    << "\nb = " << format_double(std::numbers::pi) << "\nM = " << (full ? 65536 : 4096) << "\n\n"
    << "[model]\nlambda = -1\nepsilon = 1e-15\n\n"
    << "[initial]\ntype = random_hs\ntheta = " << theta << "\nseed = 1\n\n"
    << "[time]\ntaus = " << (full ? join(dense_ladder()) : join(fraction_ladder(10.0, 6)))
    << "\n\n[convergence]\nnorms = L2, H1\nreference = numerical\nreference_tau_factor = 0.01\n\n"
    << "[cnfd]\nfp_tol = 1e-12\nmax_iter = 1000\nshift = midpoint\n";
  return o.str();
}

const std::vector<LongTimeCase>& long_time_cases() {
  // Example 3 cases iii and iv use opposite velocities so that the pair collides.
  static const std::vector<LongTimeCase> cases{
      {"example3-casei", "two static Gaussons at -5 and 5", -1.0,
       {{1, 1, -5, 0}, {1, 1, 5, 0}}, -100, 100, 3200, 20, 0.5},
      {"example3-caseii", "two static Gaussons at -3 and 3 (pendulum)", -1.0,
       {{1, 1, -3, 0}, {1, 1, 3, 0}}, -100, 100, 3200, 30, 0.5},
      {"example3-caseiii", "head-on collision, |v| = 2 from -30 and 30", -1.0,
       {{1, 1, -30, 2}, {1, 1, 30, -2}}, -100, 100, 3200, 15, 0.5},
      {"example3-caseiv", "head-on collision, |v| = 15 from -30 and 30", -1.0,
       {{1, 1, -30, 15}, {1, 1, 30, -15}}, -200, 200, 6400, 4, 0.1},
      {"example3-casev", "moving Gausson (b=1/2, v=1) hits static one", -1.0,
       {{0.5, 1, -40, 1}, {1, 1, 0, 0}}, -128, 128, 4096, 40, 0.5},
      {"example3-casevi", "moving Gausson (b=1/2, v=4) hits static one", -1.0,
       {{0.5, 1, -40, 4}, {1, 1, 0, 0}}, -128, 128, 4096, 15, 0.25},
      {"example3-casevii", "fast Gausson (b=1/2, v=25) hits static one", -1.0,
       {{0.5, 1, -100, 25}, {1, 1, 0, 0}}, -256, 256, 8192, 5, 0.1},
      {"example3-caseviii", "breathers a=1.2 and a=0.8, v=10 and 0", -1.0,
       {{0.5, 1.2, -50, 10}, {1, 0.8, 30, 0}}, -256, 256, 8192, 10, 0.25},
      {"example4-caseix", "single spreading Gaussian, v=10 from x=10", 1.0,
       {{1, 1, 10, 10}}, -128, 384, 8192, 5, 0.25, true},
      {"example4-casex", "two spreading Gaussians, relative velocity 10", 1.0,
       {{2, 1, -100, 10}, {1, 1, 0, 0}}, -512, 512, 16384, 5, 0.25},
      {"example4-casexi", "two spreading Gaussians, relative velocity 20", 1.0,
       {{2, 1, -100, 20}, {1, 1, 0, 0}}, -512, 512, 16384, 5, 0.25},
  };
  return cases;
}

std::string long_time(const LongTimeCase& c, bool full) {
  // Full-size setup: Omega = [-L, L], h = 1/16, tau = 1e-3; L = 1000 (lambda < 0) or 10000.
  const double L = c.lambda < 0 ? 1000.0 : 10000.0;
  const double a = full ? -L : c.desk_L_left;
  const double b = full ? L : c.desk_L_right;
  const std::size_t M = full ? static_cast<std::size_t>(2 * L * 16) : c.desk_M;
  const double T = full ? 100.0 : c.desk_T;
  const double dt_snap = full ? 5.0 : c.desk_dt_snap;
  std::ostringstream o;
  o << "[study]\nkind = long_time\nschemes = ST1\nT = " << format_double(T)
    << "\noutput = out/" << c.name << "\nworkers = 1\nnote = " << c.description << "; "
    << (full ? "full scale, L = " + format_double(L)
             : "desk scale, domain and horizon shrunk from L = " + format_double(L))
    << "\n\n[grid]\na = " << format_double(a) << "\nb = " << format_double(b) << "\nM = " << M
    << "\n\n[model]\nlambda = " << format_double(c.lambda) << "\nepsilon = 1e-15\n\n"
    << "[initial]\ntype = gaussian_sum\n" << terms_text(c.terms) << '\n'
    << "[time]\ntau = 1e-3\nobserve_stride = 100\nsnapshot_times = "
    << join(uniform_times(T, dt_snap)) << "\n\n"
    << "[convergence]\nnorms = L2, H1, Linf\n";
  if (c.exact) o << "\n[long_time]\nexact_errors = true\n";
  return o.str();
}

}  // namespace

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  out.push_back({"example1", "Case I moving Gausson (v=1): LT/ST1 and CNFD convergence ladders"});
  for (int theta = 1; theta <= 5; ++theta) {
    out.push_back({"example2-theta" + std::to_string(theta),
                   "Case II random H^" + std::to_string(theta) +
                       " datum: convergence against a fine-step ST1 reference"});
  }
  for (const auto& c : long_time_cases()) out.push_back({c.name, c.description});
  return out;
}

std::string preset_config(const std::string& name, bool full_scale) {
  if (name == "example1") return example1(full_scale);
  for (int theta = 1; theta <= 5; ++theta) {
    if (name == "example2-theta" + std::to_string(theta)) return example2(theta, full_scale);
  }
  for (const auto& c : long_time_cases()) {
    if (c.name == name) return long_time(c, full_scale);
  }
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace logse::harness
