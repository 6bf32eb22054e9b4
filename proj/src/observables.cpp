#include "logse/observables.hpp"

#include <algorithm>
#include <cmath>

#include "logse/fft.hpp"

namespace logse {

NormKind parse_norm_kind(const std::string& name) {
  if (name == "L2" || name == "l2") return NormKind::L2;
  if (name == "H1" || name == "h1") return NormKind::H1;
  if (name == "Linf" || name == "linf" || name == "LINF") return NormKind::Linf;
  throw ConfigError("unknown norm '" + name + "' (expected L2, H1 or Linf)");
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::L2: return "L2";
    case NormKind::H1: return "H1";
    case NormKind::Linf: return "Linf";
  }
  return "?";
}

std::vector<cplx> spectral_derivative(const ComplexField& u) {
  const auto& g = u.grid();
  const std::size_t M = g.size();
  auto& fft = thread_fft(M);
  std::vector<cplx> coeff(M);
  fft.forward(u.values(), coeff);
  for (std::size_t l = 0; l < M; ++l) {
    coeff[l] *= (l == M / 2) ? cplx{} : cplx{0.0, g.wavenumber(l)};
  }
  fft.inverse(coeff, coeff);
  return coeff;
}

std::vector<cplx> forward_difference(const ComplexField& u) {
  const std::size_t M = u.size();
  const double inv_h = 1.0 / u.grid().h();
  std::vector<cplx> d(M);
  for (std::size_t j = 0; j < M; ++j) d[j] = (u[(j + 1) % M] - u[j]) * inv_h;
  return d;
}

cplx inner_product(std::span<const cplx> u, std::span<const cplx> v, double h) {
  cplx acc{};
  for (std::size_t j = 0; j < u.size(); ++j) acc += u[j] * std::conj(v[j]);
  return h * acc;
}

double mass(const ComplexField& u) {
  double acc = 0.0;
  for (const auto& z : u.values()) acc += std::norm(z);
  return u.grid().h() * acc;
}

double momentum(const ComplexField& u) {
  const auto du = spectral_derivative(u);
  return inner_product(du, u.values(), u.grid().h()).imag();
}

EnergySplit energy_split(const ComplexField& u, const ModelParams& p) {
  const auto du = spectral_derivative(u);
  const double lam = p.lambda;
  const double eps = p.epsilon;
  double kin = 0.0;
  double inter = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    kin += std::norm(du[j]);
    const double m = std::abs(u[j]);
    inter += 2.0 * lam * eps * m + lam * m * m * 2.0 * std::log(eps + m) -
             lam * eps * eps * 2.0 * std::log1p(m / eps);
  }
  const double h = u.grid().h();
  return {h * kin, h * inter};
}

double energy_regularized(const ComplexField& u, const ModelParams& p) {
  return energy_split(u, p).total();
}

double h1_seminorm(const ComplexField& u) {
  const auto d = forward_difference(u);
  double acc = 0.0;
  for (const auto& z : d) acc += std::norm(z);
  return std::sqrt(u.grid().h() * acc);
}

double norm(const ComplexField& u, NormKind kind) {
  switch (kind) {
    case NormKind::L2: return std::sqrt(mass(u));
    case NormKind::H1: return std::sqrt(mass(u)) + h1_seminorm(u);
    case NormKind::Linf: {
      double m = 0.0;
      for (const auto& z : u.values()) m = std::max(m, std::abs(z));
      return m;
    }
  }
  return 0.0;
}

ComplexField error_field(const ComplexField& u, const ComplexField& v) {
  if (!(u.grid() == v.grid())) {
    throw std::invalid_argument("error_field: fields live on different grids");
  }
  ComplexField e(u.grid());
  for (std::size_t j = 0; j < u.size(); ++j) e[j] = u[j] - v[j];
  return e;
}

}  // namespace logse
