#pragma once

#include <complex>
#include <vector>

#include "logse/grid.hpp"

namespace logse {

enum class NormKind { L2, H1, Linf };

NormKind parse_norm_kind(const std::string& name);
std::string to_string(NormKind kind);

/// Spectral first derivative: multiply DFT coefficients by i mu_l and invert.
/// The Nyquist coefficient is dropped so that real input gives real output.
std::vector<cplx> spectral_derivative(const ComplexField& u);

/// Forward difference (u_{j+1} - u_j) / h with periodic wrap.
std::vector<cplx> forward_difference(const ComplexField& u);

/// Discrete inner product h * sum_j u_j conj(v_j).
cplx inner_product(std::span<const cplx> u, std::span<const cplx> v, double h);

/// Discrete mass h * sum |u_j|^2.
double mass(const ComplexField& u);

/// Im(h * sum conj(u_j) (Du)_j) with the spectral derivative D.
double momentum(const ComplexField& u);

/// Regularized energy
///   h * sum [ |Du|^2 + 2 lam eps |u| + lam |u|^2 ln((eps+|u|)^2)
///             - lam eps^2 ln((1 + |u|/eps)^2) ].
double energy_regularized(const ComplexField& u, const ModelParams& p);

struct EnergySplit {
  double kinetic = 0.0;
  double interaction = 0.0;
  double total() const { return kinetic + interaction; }
};

/// Kinetic part h * sum |Du|^2 and the remainder of energy_regularized.
EnergySplit energy_split(const ComplexField& u, const ModelParams& p);

/// Forward-difference H1 seminorm sqrt(h * sum |delta_x^+ u|^2).
double h1_seminorm(const ComplexField& u);

/// L2: discrete h-weighted norm. H1: L2 norm plus the forward-difference
/// seminorm. Linf: max |u_j|.
double norm(const ComplexField& u, NormKind kind);

/// Pointwise u - v. Both fields must live on the same grid.
ComplexField error_field(const ComplexField& u, const ComplexField& v);

}  // namespace logse
