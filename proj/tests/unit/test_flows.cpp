#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "logse/flows.hpp"
#include "logse/observables.hpp"
#include "test_util.hpp"

using namespace logse;
using logse::testing::band_limited_field;
using logse::testing::random_field;

TEST(PhiEps, Examples) {
  const double eps = 1e-3;
  EXPECT_EQ(phi_eps(0.0, {1, eps}), cplx(0.0));
  EXPECT_NEAR(std::abs(phi_eps(std::polar(1 - eps, 0.7), {-1, eps})), 0.0, 1e-15);
  const double z = std::numbers::e - eps;
  const auto v = phi_eps(z, {1, eps});
  EXPECT_NEAR(v.real(), 2 * z, 1e-14);
  EXPECT_EQ(v.imag(), 0.0);
}

TEST(FlowA, ConstantUnchanged) {
  const auto g = make_grid(-3, 3, 32);
  ComplexField u(g, std::vector<cplx>(32, cplx{0.3, -1.2}));
  const auto w = flow_A(u, 0.37);
  for (std::size_t j = 0; j < 32; ++j) EXPECT_NEAR(std::abs(w[j] - u[j]), 0.0, 1e-14);
}

TEST(FlowA, PlaneWaveEigenmode) {
  const auto g = make_grid(0, 2 * std::numbers::pi, 64);
  const int k = 5;
  const double t = 0.21;
  ComplexField u(g);
  for (std::size_t j = 0; j < 64; ++j) u[j] = std::polar(1.0, k * g.node(j));
  const auto w = flow_A(u, t);
  const cplx phase = std::polar(1.0, -k * k * t);
  for (std::size_t j = 0; j < 64; ++j) EXPECT_NEAR(std::abs(w[j] - phase * u[j]), 0.0, 1e-12);
}

// e^{it d_xx} e^{-x^2/2} = (1 + 2it)^{-1/2} exp(-x^2 / (2 (1 + 2it))).
TEST(FlowA, FreeGaussianClosedForm) {
  const auto g = make_grid(-16, 16, 512);
  ComplexField u(g);
  for (std::size_t j = 0; j < g.size(); ++j) u[j] = std::exp(-g.node(j) * g.node(j) / 2);
  const double t = 0.1;
  const auto w = flow_A(u, t);
  const cplx s = 1.0 + cplx{0, 2 * t};
  double worst = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.node(j);
    worst = std::max(worst, std::abs(w[j] - std::exp(-x * x / (2.0 * s)) / std::sqrt(s)));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(FlowA, IsometryL2AndH1) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> T(0, 1);
  const auto g = make_grid(-5, 7, 96);
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = random_field(g, rng);
    const auto w = flow_A(u, T(rng));
    EXPECT_NEAR(norm(w, NormKind::L2), norm(u, NormKind::L2), 1e-12 * norm(u, NormKind::L2));
    EXPECT_NEAR(norm(w, NormKind::H1), norm(u, NormKind::H1), 1e-12 * norm(u, NormKind::H1));
  }
}

TEST(FlowA, GroupProperty) {
  std::mt19937_64 rng(22);
  const auto g = make_grid(-2, 2, 64);
  const auto u = random_field(g, rng);
  const auto a = flow_A(flow_A(u, 0.13), 0.29);
  const auto b = flow_A(u, 0.42);
  EXPECT_LT(logse::testing::max_abs_diff(a, b), 1e-12);
  const auto back = flow_A(flow_A(u, 0.3), -0.3);
  EXPECT_LT(logse::testing::max_abs_diff(back, u), 1e-12);
}

TEST(FlowA, WorkspaceCacheAlternatingSteps) {
  std::mt19937_64 rng(23);
  const auto g = make_grid(-2, 2, 32);
  const auto u = random_field(g, rng);
  FlowWorkspace ws(g);
  std::vector<cplx> v(u.values().begin(), u.values().end());
  for (double t : {0.1, 0.2, 0.3, 0.1, 0.2}) ws.apply_free_flow(v, t);
  const auto ref = flow_A(u, 0.9);
  for (std::size_t j = 0; j < 32; ++j) EXPECT_NEAR(std::abs(v[j] - ref[j]), 0.0, 1e-12);
}

TEST(FlowB, Examples) {
  const double eps = 1e-3;
  const auto g = make_grid(0, 1, 8);
  EXPECT_EQ(norm(flow_B(ComplexField(g), 0.5, {1, eps}), NormKind::Linf), 0.0);

  ComplexField unit(g);
  for (std::size_t j = 0; j < 8; ++j) unit[j] = std::polar(1 - eps, 0.4 * j);
  const auto w = flow_B(unit, 0.7, {-1, eps});
  for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(std::abs(w[j] - unit[j]), 0.0, 1e-15);

  const double tau = 0.05;
  const double c = std::numbers::e - eps;
  ComplexField e(g, std::vector<cplx>(8, c));
  const auto we = flow_B(e, tau, {1, eps});
  for (std::size_t j = 0; j < 8; ++j) {
    EXPECT_NEAR(std::abs(we[j] - c * std::polar(1.0, -2 * tau)), 0.0, 1e-14);
  }
}

TEST(FlowB, ModulusPreserved) {
  std::mt19937_64 rng(24);
  const auto g = make_grid(-1, 1, 256);
  const auto u = random_field(g, rng, 3.0);
  const auto w = flow_B(u, 0.83, {-1, 1e-15});
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double a = std::abs(u[j]);
    EXPECT_LE(std::abs(std::abs(w[j]) - a), 2 * std::numeric_limits<double>::epsilon() * a);
  }
}

TEST(FlowB, GroupAndGauge) {
  std::mt19937_64 rng(25);
  const auto g = make_grid(-1, 1, 64);
  const ModelParams p{-1, 1e-12};
  const auto u = random_field(g, rng);
  EXPECT_LT(logse::testing::max_abs_diff(flow_B(flow_B(u, 0.2, p), 0.3, p), flow_B(u, 0.5, p)),
            1e-13);
  const cplx rot = std::polar(1.0, 1.1);
  auto ru = u;
  for (auto& z : ru.values()) z *= rot;
  const auto lhs = flow_B(ru, 0.4, p);
  auto rhs = flow_B(u, 0.4, p);
  for (auto& z : rhs.values()) z *= rot;
  EXPECT_LT(logse::testing::max_abs_diff(lhs, rhs), 1e-13);
}

// |flow_B(u,t)|_{H1} <= (1 + 2|lambda| t) |u|_{H1} on smooth band-limited data.
TEST(FlowB, H1GrowthBound) {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> T(0, 1);
  const auto g = make_grid(-8, 8, 256);
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = band_limited_field(g, rng, 6);
    const double t = T(rng);
    const ModelParams p{trial % 2 ? 1.0 : -1.0, 1e-15};
    const double lhs = h1_seminorm(flow_B(u, t, p));
    EXPECT_LE(lhs, (1 + 2 * std::abs(p.lambda) * t) * h1_seminorm(u) * (1 + 1e-8));
  }
}

// |Im((phi(z1) - phi(z2)) conj(z1 - z2))| <= 2 |lambda| |z1 - z2|^2.
TEST(PhiEps, MonotonicityInequalityMillionPairs) {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> U(0, 1);
  std::normal_distribution<double> N(0, 1);
  std::size_t violations = 0;
  double worst = 0;
  for (int i = 0; i < 1000000; ++i) {
    const double scale = std::pow(10.0, 4 * U(rng) - 3);
    const cplx z1{scale * N(rng), scale * N(rng)};
    const cplx z2 = i % 4 == 0 ? z1 * (1 + 1e-3 * N(rng)) : cplx{scale * N(rng), scale * N(rng)};
    const ModelParams p{U(rng) < 0.5 ? -1.0 : 1.0, U(rng)};
    const double d2 = std::norm(z1 - z2);
    const double lhs = std::abs(((phi_eps(z1, p) - phi_eps(z2, p)) * std::conj(z1 - z2)).imag());
    const double bound = 2 * std::abs(p.lambda) * d2;
    // Slack covers cancellation in phi(z1) - phi(z2) for nearby points.
    const double slack = 1e-12 * (std::abs(phi_eps(z1, p)) + std::abs(phi_eps(z2, p))) *
                         std::abs(z1 - z2);
    if (lhs > bound + slack) ++violations;
    if (d2 > 0) worst = std::max(worst, lhs / (2 * std::abs(p.lambda) * d2));
  }
  EXPECT_EQ(violations, 0u) << "worst ratio " << worst;
}
