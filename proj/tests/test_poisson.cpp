#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/analytic.hpp"
#include "oracles/random_fields.hpp"
#include "sps/model.hpp"
#include "sps/poisson.hpp"

namespace sps {
namespace {

using std::numbers::pi;

RealField gaussian_u(const RadialGrid& g) {
  return RealField::sample(g, [](double r) { return 2.0 * std::sqrt(pi) * r * oracle::gaussian_psi(r); });
}

RealField positive_density(const RadialGrid& g, std::mt19937_64& rng) {
  auto rho = oracle::random_real(g, rng);
  for (auto& v : rho.values()) v = std::abs(v);
  return rho;
}

TEST(DensityFromU, Examples) {
  const RadialGrid g(2.0, 16);
  const auto zero = density_from_u(RealField(g));
  for (double v : zero.field().values()) EXPECT_EQ(v, 0.0);
  const auto rho = density_from_u(RealField::sample(g, [](double r) { return r; }));
  for (std::size_t i = 0; i < rho.size(); ++i) EXPECT_NEAR(rho[i], g.interior_node(i), 1e-15);
}

TEST(DensityFromU, MassIdentity) {
  const RadialGrid g(16.0, 256);
  const auto rho = density_from_u(gaussian_u(g));
  double s = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) s += rho[i] * g.interior_node(i);
  EXPECT_NEAR(g.spacing() * s, 1.0, 1e-10);
}

TEST(DensityFromU, ComplexModulus) {
  const RadialGrid g(1.0, 4);
  ComplexField u(g, {complex(3, 4), complex(0, 1), complex(1, 0)});
  const auto rho = density_from_u(u);
  EXPECT_DOUBLE_EQ(rho[0], 25.0 / 0.25);
}

TEST(SolveHartreeBar, ZeroDensity) {
  const RadialGrid g(4.0, 32);
  const auto vbar = solve_hartree_bar(DensityRho(RealField(g)));
  for (double v : vbar.values()) EXPECT_EQ(v, 0.0);
}

TEST(SolveHartreeBar, SingleModeDivision) {
  const RadialGrid g(4.0, 32);
  for (int k : {1, 7, 31}) {
    const auto rho = RealField::sample(g, [&](double r) { return std::sin(k * pi * r / 4.0); });
    const auto vbar = solve_hartree_bar(DensityRho(rho));
    const double mu2 = g.frequency(k) * g.frequency(k);
    for (std::size_t i = 0; i < rho.size(); ++i) EXPECT_NEAR(vbar[i], rho[i] / mu2, 1e-14);
  }
}

TEST(SolveHartreeBar, GaussianMatchesErf) {
  const RadialGrid g(16.0, 256);
  const auto vbar = hartree_from_u(gaussian_u(g));
  double err = 0.0;
  for (std::size_t i = 0; i < vbar.size(); ++i)
    err = std::max(err, std::abs(vbar.full(i) - oracle::gaussian_v(g.interior_node(i))));
  EXPECT_LE(err, 1e-9);
}

TEST(SolveHartreeBar, ResidualProperty) {
  // Random densities put energy in every mode; checking the residual multiplies the
  // solve's round-off by mu_max^2, which reaches the tolerance near J = 512 on R = 7.
  std::mt19937_64 rng(21);
  for (int J : {4, 16, 128, 256}) {
    const RadialGrid g(7.0, J);
    const auto rho = positive_density(g, rng);
    const auto lv = laplacian_sine(solve_hartree_bar(DensityRho(rho)).field());
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
      err = std::max(err, std::abs(-lv[i] - rho[i]));
      scale = std::max(scale, std::abs(rho[i]));
    }
    EXPECT_LE(err, 1e-11 * scale) << "J=" << J;
  }
}

TEST(SolveHartreeBar, ResidualSmoothDensityFineGrid) {
  for (int J : {512}) {
    const RadialGrid g(16.0, J);
    const auto rho = density_from_u(gaussian_u(g));
    const auto lv = laplacian_sine(solve_hartree_bar(rho).field());
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
      err = std::max(err, std::abs(-lv[i] - rho[i]));
      scale = std::max(scale, std::abs(rho[i]));
    }
    EXPECT_LE(err, 1e-11 * scale) << "J=" << J;
  }
}

TEST(SolveHartreeBar, Linearity) {
  std::mt19937_64 rng(22);
  const RadialGrid g(7.0, 64);
  const auto r1 = positive_density(g, rng);
  const auto r2 = positive_density(g, rng);
  const double a = 0.7, b = -2.3;
  RealField mix(g);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * r1[i] + b * r2[i];
  const auto v1 = solve_hartree_bar(DensityRho(r1));
  const auto v2 = solve_hartree_bar(DensityRho(r2));
  const auto vm = solve_hartree_bar(DensityRho(mix));
  for (std::size_t i = 0; i < mix.size(); ++i) EXPECT_NEAR(vm[i], a * v1[i] + b * v2[i], 1e-12);
}

TEST(SolveHartreeBar, DoublingScales) {
  std::mt19937_64 rng(23);
  const RadialGrid g(7.0, 64);
  const auto rho = positive_density(g, rng);
  RealField twice = rho;
  twice *= 2.0;
  const auto v1 = solve_hartree_bar(DensityRho(rho));
  const auto v2 = solve_hartree_bar(DensityRho(twice));
  for (std::size_t i = 0; i < rho.size(); ++i) EXPECT_EQ(v2[i], 2.0 * v1[i]);
}

TEST(SolveHartreeBar, FarFieldTendsToOne) {
  // Density confined to r < 8 on R = 24: Vbar approaches 1 - r/R outside it, so V -> 1.
  const RadialGrid g(24.0, 512);
  const auto vbar = hartree_from_u(gaussian_u(g));
  for (std::size_t i = vbar.size() - 32; i < vbar.size(); ++i) {
    EXPECT_NEAR(vbar[i], 1.0 - g.interior_node(i) / g.radius(), 1e-6);
    EXPECT_NEAR(vbar.full(i), 1.0, 1e-6);
  }
}

TEST(HartreeTerm, Examples) {
  const RadialGrid g(4.0, 16);
  const HartreeBar zero{RealField(g)};
  const auto w0 = hartree_term(zero, 3.0);
  for (double w : w0.values()) EXPECT_DOUBLE_EQ(w, 3.0 / (4.0 * pi * 4.0));

  const auto vbar = hartree_from_u(gaussian_u(g));
  const auto w1 = hartree_term(vbar, 0.0);
  for (double w : w1.values()) EXPECT_EQ(w, 0.0);
}

TEST(HartreeTerm, GaussianMatchesErf) {
  const RadialGrid g(16.0, 256);
  const double c_p = 100.0;
  const auto w = hartree_term(hartree_from_u(gaussian_u(g)), c_p);
  for (std::size_t i = 0; i < w.size(); ++i)
    EXPECT_NEAR(w[i], c_p * oracle::gaussian_vp(g.interior_node(i)), 1e-8);
}

}  // namespace
}  // namespace sps
