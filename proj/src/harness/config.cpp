#include "logse/harness/config.hpp"
#include "logse/harness/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace logse::harness {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) out.push_back(parse_number(item));
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& s) {
  const double v = parse_number(s);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& s) {
  const auto v = lower(trim(s));
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + s + "'");
}

std::string fmt(double x) { return format_double(x); }

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + fmt(xs[i]);
  return out;
}

// term = b=..., a=..., x0=..., v=...[, b_im=..., a_im=...]
GaussianParams parse_term(const std::string& key, const std::string& s) {
  GaussianParams g;
  double b_re = 1.0, b_im = 0.0, a_re = 1.0, a_im = 0.0;
  for (const auto& field : split_list(s)) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ConfigError(key + ": expected name=value in '" + field + "'");
    const auto name = trim(field.substr(0, eq));
    const double value = parse_number(trim(field.substr(eq + 1)));
    if (name == "b") b_re = value;
    else if (name == "b_im") b_im = value;
    else if (name == "a") a_re = value;
    else if (name == "a_im") a_im = value;
    else if (name == "x0") g.x0 = value;
    else if (name == "v") g.v = value;
    else throw ConfigError(key + ": unknown Gaussian parameter '" + name + "'");
  }
  g.b0 = {b_re, b_im};
  g.a0 = {a_re, a_im};
  return g;
}

std::string format_term(const GaussianParams& g) {
  std::string s = "b=" + fmt(g.b0.real()) + ", a=" + fmt(g.a0.real()) + ", x0=" + fmt(g.x0) +
                  ", v=" + fmt(g.v);
  if (g.b0.imag() != 0.0) s += ", b_im=" + fmt(g.b0.imag());
  if (g.a0.imag() != 0.0) s += ", a_im=" + fmt(g.a0.imag());
  return s;
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"study", {"kind", "schemes", "T", "output", "workers", "note"}},
      {"grid", {"a", "b", "M"}},
      {"model", {"lambda", "epsilon"}},
      {"initial", {"type", "theta", "seed"}},
      {"time", {"taus", "tau", "observe_stride", "snapshot_times"}},
      {"convergence", {"norms", "reference", "reference_tau_factor"}},
      {"cnfd", {"fp_tol", "max_iter", "shift", "taus", "tau_over_h"}},
      {"epsilon_study", {"epsilons", "epsilon_ref"}},
      {"long_time", {"exact_errors"}},
  };
  return keys;
}

bool is_sorted_strictly_decreasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] < xs[i - 1])) return false;
  }
  return true;
}

}  // namespace

StudyKind parse_study_kind(const std::string& s) {
  const auto v = lower(trim(s));
  if (v == "convergence") return StudyKind::Convergence;
  if (v == "epsilon_study" || v == "epsilon") return StudyKind::EpsilonStudy;
  if (v == "long_time") return StudyKind::LongTime;
  throw ConfigError("unknown study kind '" + s + "' (convergence, epsilon_study, long_time)");
}

std::string to_string(StudyKind k) {
  switch (k) {
    case StudyKind::Convergence: return "convergence";
    case StudyKind::EpsilonStudy: return "epsilon_study";
    case StudyKind::LongTime: return "long_time";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  const auto v = trim(s);
  if (v == "CNFD" || v == "cnfd") return Method::CNFD;
  switch (parse_split_scheme(v)) {
    case SplitScheme::LT: return Method::LT;
    case SplitScheme::ST1: return Method::ST1;
    case SplitScheme::ST2: return Method::ST2;
  }
  throw ConfigError("unknown scheme '" + s + "'");
}

std::string to_string(Method m) {
  return m == Method::CNFD ? "CNFD" : to_string(split_scheme(m));
}

SplitScheme split_scheme(Method m) {
  switch (m) {
    case Method::LT: return SplitScheme::LT;
    case Method::ST1: return SplitScheme::ST1;
    case Method::ST2: return SplitScheme::ST2;
    case Method::CNFD: break;
  }
  throw ConfigError("CNFD is not a splitting scheme");
}

InitialKind parse_initial_kind(const std::string& s) {
  const auto v = lower(trim(s));
  if (v == "gaussian_sum") return InitialKind::GaussianSum;
  if (v == "random_hs") return InitialKind::RandomHs;
  throw ConfigError("unknown initial data type '" + s + "' (gaussian_sum, random_hs)");
}

std::string to_string(InitialKind k) {
  return k == InitialKind::GaussianSum ? "gaussian_sum" : "random_hs";
}

ReferenceKind parse_reference_kind(const std::string& s) {
  const auto v = lower(trim(s));
  if (v == "analytic") return ReferenceKind::Analytic;
  if (v == "numerical") return ReferenceKind::Numerical;
  throw ConfigError("unknown reference '" + s + "' (analytic, numerical)");
}

std::string to_string(ReferenceKind k) {
  return k == ReferenceKind::Analytic ? "analytic" : "numerical";
}

CnfdShift parse_cnfd_shift(const std::string& s) {
  const auto v = lower(trim(s));
  if (v == "midpoint") return CnfdShift::Midpoint;
  if (v == "none") return CnfdShift::None;
  throw ConfigError("unknown cnfd shift '" + s + "' (midpoint, none)");
}

std::string to_string(CnfdShift s) { return s == CnfdShift::Midpoint ? "midpoint" : "none"; }

double parse_number(const std::string& raw) {
  const auto s = trim(raw);
  if (s.empty()) throw ConfigError("empty number");
  const auto slash = s.find('/');
  auto one = [&](const std::string& part) {
    const auto t = trim(part);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + raw + "'");
    }
    if (used != t.size()) throw ConfigError("not a number: '" + raw + "'");
    return v;
  };
  if (slash == std::string::npos) return one(s);
  const double den = one(s.substr(slash + 1));
  if (den == 0.0) throw ConfigError("zero denominator in '" + raw + "'");
  return one(s.substr(0, slash)) / den;
}

ComplexField StudyConfig::initial_field(const Grid1D& g) const {
  return initial == InitialKind::GaussianSum ? gaussian_sum(gaussians, g) : random_hs(rough, g);
}

void StudyConfig::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("study.T must be positive");
  if (methods.empty()) throw ConfigError("study.schemes must name at least one scheme");
  if (workers == 0) throw ConfigError("study.workers must be >= 1");
  make_grid(a, b, M);
  model.validate();
  if (initial == InitialKind::GaussianSum) gaussians.validate();
  else rough.validate();
  if (norms.empty()) throw ConfigError("convergence.norms must not be empty");
  cnfd_params().validate();

  auto check_ladder = [](const std::vector<double>& xs, const std::string& name) {
    if (xs.size() < 3) throw ConfigError(name + ": at least 3 entries required");
    for (double x : xs) {
      if (!(x > 0.0)) throw ConfigError(name + ": entries must be positive");
    }
    if (!is_sorted_strictly_decreasing(xs)) throw ConfigError(name + ": must be strictly decreasing");
  };
  auto check_tau = [&](double t, const std::string& name) {
    if (!(t > 0.0)) throw ConfigError(name + " must be positive");
    if (t > T) throw ConfigError(name + " exceeds T");
  };

  switch (kind) {
    case StudyKind::Convergence: {
      const bool split = std::any_of(methods.begin(), methods.end(),
                                     [](Method m) { return m != Method::CNFD; });
      const bool cnfd = std::find(methods.begin(), methods.end(), Method::CNFD) != methods.end();
      if (split || cnfd_taus.empty()) check_ladder(taus, "time.taus");
      if (cnfd && !cnfd_taus.empty()) check_ladder(cnfd_taus, "cnfd.taus");
      for (double t : taus) check_tau(t, "time.taus entry");
      for (double t : cnfd_taus) check_tau(t, "cnfd.taus entry");
      if (reference == ReferenceKind::Analytic &&
          (initial != InitialKind::GaussianSum || gaussians.terms.size() != 1)) {
        throw ConfigError("analytic reference needs a single-term gaussian_sum initial datum");
      }
      if (reference == ReferenceKind::Numerical &&
          !(reference_tau_factor > 0.0 && reference_tau_factor < 1.0)) {
        throw ConfigError("convergence.reference_tau_factor must lie in (0, 1)");
      }
      if (cnfd && tau_over_h > 0.0 && reference != ReferenceKind::Analytic) {
        throw ConfigError("cnfd.tau_over_h refines the grid per step; it needs reference = analytic");
      }
      if (tau_over_h < 0.0) throw ConfigError("cnfd.tau_over_h must be >= 0");
      break;
    }
    case StudyKind::EpsilonStudy: {
      check_tau(tau, "time.tau");
      if (epsilons.empty()) throw ConfigError("epsilon_study.epsilons must not be empty");
      for (double e : epsilons) {
        if (!(e > 0.0)) throw ConfigError("epsilon_study.epsilons entries must be positive");
      }
      if (!(epsilon_ref > 0.0)) throw ConfigError("epsilon_study.epsilon_ref must be positive");
      break;
    }
    case StudyKind::LongTime: {
      check_tau(tau, "time.tau");
      if (methods.size() != 1) throw ConfigError("long_time runs exactly one scheme");
      for (double t : snapshot_times) {
        if (!(t >= 0.0 && t <= T)) throw ConfigError("time.snapshot_times must lie in [0, T]");
      }
      if (exact_errors && (initial != InitialKind::GaussianSum || gaussians.terms.size() != 1)) {
        throw ConfigError("long_time.exact_errors needs a single-term gaussian_sum initial datum");
      }
      break;
    }
  }
}

StudyConfig parse_config(std::istream& in) {
  // '#' comment lines are accepted in addition to the INI ';' style.
  std::ostringstream cleaned;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (!t.empty() && t[0] == '#') continue;
    cleaned << line << '\n';
  }
  pt::ptree tree;
  try {
    std::istringstream iss(cleaned.str());
    pt::read_ini(iss, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("key '" + section + "' must appear inside a [section]");
    }
    const auto it = allowed_keys().find(section);
    const bool terms = section == "initial";
    if (it == allowed_keys().end()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (terms && key.rfind("term", 0) == 0) continue;
      if (!it->second.count(key)) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    }
  }

  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return trim(*v);
    return std::nullopt;
  };

  StudyConfig c;
  if (auto v = get("study.kind")) c.kind = parse_study_kind(*v);
  if (auto v = get("study.schemes")) {
    c.methods.clear();
    for (const auto& s : split_list(*v)) c.methods.push_back(parse_method(s));
  }
  if (auto v = get("study.T")) c.T = parse_number(*v);
  if (auto v = get("study.output")) c.output = *v;
  if (auto v = get("study.workers")) c.workers = static_cast<unsigned>(parse_count("study.workers", *v));
  if (auto v = get("study.note")) c.note = *v;

  if (auto v = get("grid.a")) c.a = parse_number(*v);
  if (auto v = get("grid.b")) c.b = parse_number(*v);
  if (auto v = get("grid.M")) c.M = parse_count("grid.M", *v);

  if (auto v = get("model.lambda")) c.model.lambda = parse_number(*v);
  if (auto v = get("model.epsilon")) c.model.epsilon = parse_number(*v);

  if (auto v = get("initial.type")) c.initial = parse_initial_kind(*v);
  if (auto v = get("initial.theta")) c.rough.theta = parse_number(*v);
  if (auto v = get("initial.seed")) c.rough.seed = parse_count("initial.seed", *v);
  if (auto sec = tree.get_child_optional("initial")) {
    std::map<std::size_t, GaussianParams> terms;
    for (const auto& [key, value] : *sec) {
      if (key.rfind("term", 0) != 0) continue;
      const auto idx = parse_count("initial." + key, key.substr(4));
      if (!terms.emplace(idx, parse_term("initial." + key, value.data())).second) {
        throw ConfigError("duplicate initial." + key);
      }
    }
    for (auto& [idx, g] : terms) c.gaussians.terms.push_back(g);
  }

  if (auto v = get("time.taus")) c.taus = parse_numbers(*v);
  if (auto v = get("time.tau")) c.tau = parse_number(*v);
  if (auto v = get("time.observe_stride")) c.observe_stride = parse_count("time.observe_stride", *v);
  if (auto v = get("time.snapshot_times")) c.snapshot_times = parse_numbers(*v);

  if (auto v = get("convergence.norms")) {
    c.norms.clear();
    for (const auto& s : split_list(*v)) c.norms.push_back(parse_norm_kind(s));
  }
  if (auto v = get("convergence.reference")) c.reference = parse_reference_kind(*v);
  if (auto v = get("convergence.reference_tau_factor")) c.reference_tau_factor = parse_number(*v);

  if (auto v = get("cnfd.fp_tol")) c.fp_tol = parse_number(*v);
  if (auto v = get("cnfd.max_iter")) c.max_iter = parse_count("cnfd.max_iter", *v);
  if (auto v = get("cnfd.shift")) c.shift = parse_cnfd_shift(*v);
  if (auto v = get("cnfd.taus")) c.cnfd_taus = parse_numbers(*v);
  if (auto v = get("cnfd.tau_over_h")) c.tau_over_h = parse_number(*v);

  if (auto v = get("epsilon_study.epsilons")) c.epsilons = parse_numbers(*v);
  if (auto v = get("epsilon_study.epsilon_ref")) c.epsilon_ref = parse_number(*v);

  if (auto v = get("long_time.exact_errors")) c.exact_errors = parse_bool("long_time.exact_errors", *v);

  c.validate();
  return c;
}

StudyConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

StudyConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in);
}

std::string to_config_text(const StudyConfig& c) {
  std::ostringstream o;
  o << "[study]\n";
  o << "kind = " << to_string(c.kind) << '\n';
  o << "schemes = ";
  for (std::size_t i = 0; i < c.methods.size(); ++i) o << (i ? ", " : "") << to_string(c.methods[i]);
  o << "\nT = " << fmt(c.T) << '\n';
  if (!c.output.empty()) o << "output = " << c.output << '\n';
  o << "workers = " << c.workers << '\n';
  if (!c.note.empty()) o << "note = " << c.note << '\n';

  o << "\n[grid]\na = " << fmt(c.a) << "\nb = " << fmt(c.b) << "\nM = " << c.M << '\n';
  o << "\n[model]\nlambda = " << fmt(c.model.lambda) << "\nepsilon = " << fmt(c.model.epsilon)
    << '\n';

  o << "\n[initial]\ntype = " << to_string(c.initial) << '\n';
  o << "theta = " << fmt(c.rough.theta) << "\nseed = " << c.rough.seed << '\n';
  for (std::size_t i = 0; i < c.gaussians.terms.size(); ++i) {
    o << "term" << i + 1 << " = " << format_term(c.gaussians.terms[i]) << '\n';
  }

  o << "\n[time]\n";
  if (!c.taus.empty()) o << "taus = " << join_numbers(c.taus) << '\n';
  o << "tau = " << fmt(c.tau) << "\nobserve_stride = " << c.observe_stride << '\n';
  if (!c.snapshot_times.empty()) o << "snapshot_times = " << join_numbers(c.snapshot_times) << '\n';

  o << "\n[convergence]\nnorms = ";
  for (std::size_t i = 0; i < c.norms.size(); ++i) o << (i ? ", " : "") << to_string(c.norms[i]);
  o << "\nreference = " << to_string(c.reference)
    << "\nreference_tau_factor = " << fmt(c.reference_tau_factor) << '\n';

  o << "\n[cnfd]\nfp_tol = " << fmt(c.fp_tol) << "\nmax_iter = " << c.max_iter
    << "\nshift = " << to_string(c.shift) << '\n';
  if (!c.cnfd_taus.empty()) o << "taus = " << join_numbers(c.cnfd_taus) << '\n';
  o << "tau_over_h = " << fmt(c.tau_over_h) << '\n';

  o << "\n[epsilon_study]\n";
  if (!c.epsilons.empty()) o << "epsilons = " << join_numbers(c.epsilons) << '\n';
  o << "epsilon_ref = " << fmt(c.epsilon_ref) << '\n';

  o << "\n[long_time]\nexact_errors = " << (c.exact_errors ? "true" : "false") << '\n';
  return o.str();
}

}  // namespace logse::harness
