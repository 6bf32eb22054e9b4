#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "logse/grid.hpp"
#include "logse/reference.hpp"

namespace logse {

/// u0(x) = sum_k b_k exp(-a_k/2 (x - x_k)^2 + i v_k x).
struct GaussianSumSpec {
  std::vector<GaussianParams> terms;
  void validate() const;
  friend bool operator==(const GaussianSumSpec&, const GaussianSumSpec&) = default;
};

ComplexField gaussian_sum(const GaussianSumSpec& spec, const Grid1D& grid);

/// Random data with prescribed spectral decay |mu|^-theta.
struct RoughDataSpec {
  double theta = 1.0;
  std::uint64_t seed = 0;
  void validate() const;
  friend bool operator==(const RoughDataSpec&, const RoughDataSpec&) = default;
};

/// Generator used by random_hs, recorded in study reports.
inline constexpr std::string_view kRoughDataRng =
    "std::mt19937_64, uniform [0,1) from the top 53 bits; M real parts then M imaginary parts";

/// U = rand + i rand, filtered by |mu_l|^-theta with the zero mode removed,
/// normalized to unit discrete L2 norm. Deterministic for (seed, M, theta).
ComplexField random_hs(const RoughDataSpec& spec, const Grid1D& grid);

}  // namespace logse
