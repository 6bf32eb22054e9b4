#include "logse/initdata.hpp"

#include <cmath>
#include <iostream>
#include <random>

#include "logse/fft.hpp"
#include "logse/observables.hpp"

namespace logse {

void GaussianSumSpec::validate() const {
  if (terms.empty()) throw ConfigError("gaussian_sum: at least one term required");
  for (const auto& t : terms) t.validate();
}

ComplexField gaussian_sum(const GaussianSumSpec& spec, const Grid1D& grid) {
  spec.validate();
  ComplexField u(grid);
  const std::size_t last = grid.size() - 1;
  for (const auto& term : spec.terms) {
    double edge = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double y = grid.node(j) - term.x0;
      const cplx z = term.b0 * std::exp(-0.5 * term.a0 * y * y + cplx{0.0, term.v * grid.node(j)});
      u[j] += z;
      if (j == 0 || j == last) edge = std::max(edge, std::abs(z));
    }
    if (edge > 1e-14) {
      std::clog << "warning: Gaussian term centred at " << term.x0 << " has |u| = " << edge
                << " at the domain boundary\n";
    }
  }
  return u;
}

void RoughDataSpec::validate() const {
  if (!(theta >= 0.0)) throw ConfigError("random_hs: theta must be >= 0");
}

ComplexField random_hs(const RoughDataSpec& spec, const Grid1D& grid) {
  spec.validate();
  const std::size_t M = grid.size();
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<double> re(M);
  std::vector<double> im(M);
  for (auto& x : re) x = uniform();
  for (auto& x : im) x = uniform();
  std::vector<cplx> coeff(M);
  for (std::size_t j = 0; j < M; ++j) coeff[j] = {re[j], im[j]};

  auto& fft = thread_fft(M);
  fft.forward(coeff, coeff);
  for (std::size_t l = 0; l < M; ++l) {
    const double mu = std::abs(grid.wavenumber(l));
    coeff[l] *= mu == 0.0 ? 0.0 : std::pow(mu, -spec.theta);
  }
  fft.inverse(coeff, coeff);

  ComplexField u(grid, std::move(coeff));
  const double n = norm(u, NormKind::L2);
  if (!(n > 0.0)) throw std::runtime_error("random_hs: degenerate draw with zero norm");
  for (auto& z : u.values()) z /= n;
  return u;
}

}  // namespace logse
