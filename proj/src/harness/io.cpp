#include "logse/harness/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace logse::harness {

std::string format_double(double x) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x || x != x) break;
  }
  return buf;
}

std::string snapshot_filename(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshot_t%.10g.csv", t);
  return buf;
}

void write_snapshot(std::ostream& out, const ComplexField& u, double t, const ModelParams& p) {
  const auto& g = u.grid();
  out << "# a b M t epsilon lambda\n";
  out << "# " << format_double(g.a()) << ' ' << format_double(g.b()) << ' ' << g.size() << ' '
      << format_double(t) << ' ' << format_double(p.epsilon) << ' ' << format_double(p.lambda)
      << '\n';
  out << "x,Re,Im\n";
  for (std::size_t j = 0; j < u.size(); ++j) {
    out << format_double(g.node(j)) << ',' << format_double(u[j].real()) << ','
        << format_double(u[j].imag()) << '\n';
  }
}

void write_snapshot(const std::filesystem::path& path, const ComplexField& u, double t,
                    const ModelParams& p) {
  std::ostringstream o;
  write_snapshot(o, u, t, p);
  write_text_file(path, o.str());
}

SnapshotData read_snapshot(std::istream& in) {
  std::string names, values, header;
  if (!std::getline(in, names) || names != "# a b M t epsilon lambda") {
    throw std::runtime_error("snapshot: missing '# a b M t epsilon lambda' header");
  }
  if (!std::getline(in, values) || values.rfind("# ", 0) != 0) {
    throw std::runtime_error("snapshot: missing metadata line");
  }
  std::istringstream meta(values.substr(2));
  double a = 0, b = 0, t = 0;
  std::size_t M = 0;
  ModelParams p;
  if (!(meta >> a >> b >> M >> t >> p.epsilon >> p.lambda)) {
    throw std::runtime_error("snapshot: malformed metadata line '" + values + "'");
  }
  if (!std::getline(in, header) || header != "x,Re,Im") {
    throw std::runtime_error("snapshot: missing 'x,Re,Im' column header");
  }
  Grid1D grid = make_grid(a, b, M);
  std::vector<cplx> u;
  u.reserve(M);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &re, &im) != 3) {
      throw std::runtime_error("snapshot: malformed row '" + line + "'");
    }
    u.emplace_back(re, im);
  }
  if (u.size() != M) {
    throw std::runtime_error("snapshot: expected " + std::to_string(M) + " rows, found " +
                             std::to_string(u.size()));
  }
  return {ComplexField(grid, std::move(u)), t, p};
}

SnapshotData read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open snapshot " + path.string());
  return read_snapshot(in);
}

void write_observables(std::ostream& out, const std::vector<ObservableSample>& samples,
                       bool with_fp_iters) {
  out << "t,mass,momentum,E_total,E_kin,E_int" << (with_fp_iters ? ",fp_iters" : "") << '\n';
  for (const auto& s : samples) {
    out << format_double(s.t) << ',' << format_double(s.mass) << ',' << format_double(s.momentum)
        << ',' << format_double(s.energy) << ',' << format_double(s.kinetic) << ','
        << format_double(s.interaction);
    if (with_fp_iters) out << ',' << s.fp_iters;
    out << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace logse::harness
