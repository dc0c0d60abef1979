#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/random_fields.hpp"
#include "sps/dynamics.hpp"
#include "sps/ground_state.hpp"

namespace sps {
namespace {

using std::numbers::pi;

const PhysicsParams kPaper{100.0, 1.0, ExternalPotential::harmonic()};
const PhysicsParams kLinear{0.0, 0.0, ExternalPotential::harmonic()};
const PhysicsParams kFree{};

ComplexField mode(const RadialGrid& g, int k) {
  return ComplexField::sample(g, [&](double r) { return complex(std::sin(k * pi * r / g.radius()), 0.0); });
}

double sup_diff(const ComplexField& a, const ComplexField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TEST(KineticHalfStep, TwoHalvesAreFreeFlight) {
  const RadialGrid g(5.0, 64);
  const double dt = 0.03;
  for (int k : {1, 9, 40}) {
    const auto u = mode(g, k);
    const auto v = kinetic_half_step(kinetic_half_step(u, dt), dt);
    const double mu = g.frequency(k);
    const complex phase = std::polar(1.0, -dt * mu * mu / 2.0);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_LE(std::abs(v[i] - phase * u[i]), 1e-13);
  }
}

TEST(KineticHalfStep, ZeroStepIsIdentity) {
  std::mt19937_64 rng(41);
  const RadialGrid g(5.0, 64);
  const auto u = oracle::random_complex(g, rng);
  EXPECT_LE(sup_diff(kinetic_half_step(u, 0.0), u), 1e-15);
}

TEST(KineticHalfStep, PreservesNormAndCoefficientModuli) {
  std::mt19937_64 rng(42);
  for (int J : {8, 128, 1024}) {
    const RadialGrid g(5.0, J);
    const auto u = oracle::random_complex(g, rng);
    const auto v = kinetic_half_step(u, 0.37);
    EXPECT_NEAR(norm_h(v), norm_h(u), 1e-13);
    const auto su = dst_forward(u);
    const auto sv = dst_forward(v);
    for (std::size_t m = 0; m < su.size(); ++m) EXPECT_NEAR(std::abs(sv[m]), std::abs(su[m]), 1e-13);
  }
}

TEST(PotentialStep, FreeIsIdentity) {
  std::mt19937_64 rng(43);
  const RadialGrid g(5.0, 32);
  const auto u = oracle::random_complex(g, rng);
  const auto v = potential_step(u, kFree, 0.1);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(v[i], u[i]);
}

TEST(PotentialStep, HarmonicPhase) {
  std::mt19937_64 rng(44);
  const RadialGrid g(5.0, 32);
  const auto u = oracle::random_complex(g, rng);
  const double dt = 0.1;
  const auto v = potential_step(u, kLinear, dt);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = g.interior_node(i);
    EXPECT_LE(std::abs(v[i] - u[i] * std::polar(1.0, -dt * r * r / 2.0)), 1e-15);
  }
}

TEST(PotentialStep, PaperCaseKeepsModuli) {
  const RadialGrid g(16.0, 256);
  const auto u = gaussian_initial(g);
  const auto v = potential_step(u, kPaper, 0.01);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(std::abs(v[i]), std::abs(u[i]), 1e-15);
}

TEST(PotentialStep, HartreeComesFromTheInputState) {
  // With c_p only, the phase must match W computed from the state passed in.
  const RadialGrid g(16.0, 128);
  auto u = gaussian_initial(g);
  u = kinetic_half_step(u, 0.2);
  const PhysicsParams p{50.0, 0.0, ExternalPotential::zero()};
  const auto w = hartree_term(hartree_from_u(u), 50.0);
  const auto v = potential_step(u, p, 0.05);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_LE(std::abs(v[i] - u[i] * std::polar(1.0, -0.05 * w[i])), 1e-15);
}

TEST(TsspStep, FreeSingleModeIsExact) {
  const RadialGrid g(5.0, 64);
  const double dt = 0.01;
  const int k = 7;
  auto u = mode(g, k);
  const auto u0 = u;
  const double mu = g.frequency(k);
  for (int n = 1; n <= 10; ++n) {
    u = tssp_step(u, kFree, dt);
    const complex phase = std::polar(1.0, -n * dt * mu * mu / 2.0);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_LE(std::abs(u[i] - phase * u0[i]), 1e-13 * n);
  }
}

TEST(TsspStep, MatchesComposition) {
  const RadialGrid g(16.0, 128);
  const auto u = gaussian_initial(g);
  const double dt = 0.01;
  const auto composed = kinetic_half_step(potential_step(kinetic_half_step(u, dt), kPaper, dt), dt);
  EXPECT_EQ(sup_diff(tssp_step(u, kPaper, dt), composed), 0.0);
}

TEST(TsspStep, EachSubStepPreservesMass) {
  std::mt19937_64 rng(45);
  const RadialGrid g(16.0, 256);
  auto u = oracle::random_complex(g, rng);
  u *= 1.0 / std::sqrt(mass(u));
  EXPECT_NEAR(mass(kinetic_half_step(u, 0.01)), 1.0, 1e-13);
  EXPECT_NEAR(mass(potential_step(u, kPaper, 0.01)), 1.0, 1e-13);
}

TEST(TsspStep, TimeReversalInLinearCase) {
  std::mt19937_64 rng(46);
  const RadialGrid g(8.0, 128);
  const auto u = gaussian_initial(g, 0.8);
  const auto back = tssp_step(tssp_step(u, kLinear, 0.01), kLinear, -0.01);
  EXPECT_LE(sup_diff(back, u), 1e-10);
}

TEST(TsspStep, MassConservedOverManySteps) {
  const RadialGrid g(16.0, 256);
  auto u = gaussian_initial(g);
  const double m0 = mass(u);
  const TsspPropagator prop(g, kPaper, 0.01);
  double drift = 0.0;
  for (int n = 0; n < 10000; ++n) {
    u = prop.step(u);
    if (n % 100 == 99) drift = std::max(drift, std::abs(mass(u) - m0));
  }
  EXPECT_LE(drift, 1e-12);
}

TEST(TsspConfig, Validation) {
  TsspConfig c;
  c.dt = 0.01;
  c.t_final = 0.015;
  EXPECT_THROW(c.validate(), ConfigError);
  c.t_final = 1.0;
  c.snapshot_times = {1.5};
  EXPECT_THROW(c.validate(), ConfigError);
  c.snapshot_times = {0.005};
  EXPECT_THROW(c.validate(), ConfigError);
  c.snapshot_times = {0.0, 0.5, 1.0};
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.steps(), 100);
  c.record_every = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c.record_every = 1;
  c.dt = -0.1;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Evolve, ZeroFinalTime) {
  const RadialGrid g(16.0, 64);
  TsspConfig c;
  c.t_final = 0.0;
  c.snapshot_times = {0.0};
  const auto u0 = gaussian_initial(g);
  const auto trace = evolve(u0, kPaper, c);
  ASSERT_EQ(trace.observables.size(), 1u);
  EXPECT_EQ(trace.observables[0].time, 0.0);
  ASSERT_EQ(trace.snapshots.size(), 1u);
  const auto psi = psi_from_u(u0);
  for (std::size_t j = 0; j < psi.size(); ++j) EXPECT_EQ(trace.snapshots[0].psi[j], psi[j]);
}

TEST(Evolve, RecordingCadenceAndSnapshots) {
  const RadialGrid g(16.0, 64);
  TsspConfig c;
  c.dt = 0.01;
  c.t_final = 0.25;
  c.record_every = 10;
  c.snapshot_times = {0.1, 0.25};
  int hook_obs = 0, hook_snap = 0;
  EvolveHooks hooks{[&](const ObservableSet&) { ++hook_obs; }, [&](const Snapshot&) { ++hook_snap; }};
  const auto trace = evolve(gaussian_initial(g), kPaper, c, hooks);
  ASSERT_EQ(trace.observables.size(), 4u);  // 0, 0.1, 0.2, 0.25
  EXPECT_NEAR(trace.observables[3].time, 0.25, 1e-15);
  for (std::size_t i = 1; i < trace.observables.size(); ++i)
    EXPECT_GT(trace.observables[i].time, trace.observables[i - 1].time);
  EXPECT_EQ(hook_obs, 4);
  EXPECT_EQ(hook_snap, 2);
  ASSERT_EQ(trace.snapshots.size(), 2u);
  EXPECT_EQ(trace.snapshots[1].time, 0.25);
  EXPECT_NEAR(std::abs(trace.snapshots[1].psi[0]), trace.observables[3].psi_origin_abs, 1e-15);
}

TEST(Evolve, RejectsUnnormalizedInput) {
  const RadialGrid g(16.0, 64);
  auto u = gaussian_initial(g);
  u *= 1.1;
  EXPECT_THROW(evolve(u, kPaper, TsspConfig{}), ConfigError);
}

TEST(Evolve, DetectsBlowUp) {
  // A trap so stiff that V_ext overflows to infinity away from the origin.
  const RadialGrid g(16.0, 64);
  TsspConfig c;
  c.t_final = 0.1;
  const PhysicsParams p{0.0, 0.0, ExternalPotential::harmonic(1e200)};
  try {
    evolve(gaussian_initial(g), p, c);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("t = 0.01"), std::string::npos) << e.what();
  }
}

TEST(Evolve, StationaryGroundState) {
  const RadialGrid g(8.0, 128);
  const auto gs = compute_ground_state(kLinear, g, GfdnConfig{});
  ComplexField u(g);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = gs.phi_u[i];
  TsspConfig c;
  c.dt = 0.001;
  c.t_final = 1.0;
  c.snapshot_times = {0.25, 0.5, 1.0};
  const auto trace = evolve(u, kLinear, c);
  for (const auto& s : trace.snapshots)
    for (std::size_t j = 0; j < s.psi.size(); ++j) EXPECT_LE(std::abs(std::abs(s.psi[j]) - std::abs(gs.phi_psi[j])), 1e-6);
}

TEST(Evolve, PaperRunConservation) {
  // Mass is conserved to round-off. Energy is not an invariant of the splitting; its
  // drift is the O(dt^2) splitting error (about 1.3e-6 relative at dt = 0.01).
  const RadialGrid g(16.0, 256);
  auto drifts = [&](double dt) {
    TsspConfig c;
    c.dt = dt;
    c.t_final = 10.0;
    c.record_every = 10;
    const auto trace = evolve(gaussian_initial(g), kPaper, c);
    const auto& first = trace.observables.front();
    double mdrift = 0.0, edrift = 0.0;
    for (const auto& o : trace.observables) {
      mdrift = std::max(mdrift, std::abs(o.mass - first.mass));
      edrift = std::max(edrift, std::abs(o.energy - first.energy) / std::abs(first.energy));
    }
    return std::pair{mdrift, edrift};
  };
  const auto [m1, e1] = drifts(0.01);
  const auto [m2, e2] = drifts(0.005);
  EXPECT_LE(m1, 1e-12);
  EXPECT_LE(m2, 1e-12);
  EXPECT_LE(e1, 2e-6);
  EXPECT_LE(e2, 1e-6);
  EXPECT_NEAR(e1 / e2, 4.0, 0.5);
}

}  // namespace
}  // namespace sps
