#pragma once

// Second-order time splitting for the reduced Schroedinger equation
//
//   i U_t = -U_rr / 2 + [V_ext + W(U) - alpha (2 sqrt(pi) r)^{-2/3} |U|^{2/3}] U.
//
// One step is kinetic(dt/2) o potential(dt) o kinetic(dt/2). The kinetic flow is
// diagonal in sine space, exp(-i dt mu_k^2 / 4) per half step; the potential flow
// is a pointwise phase, with the Hartree field W recomputed from the state that
// enters the potential sub-step. Both factors are unimodular, so the discrete mass
// is conserved to round-off.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "sps/errors.hpp"
#include "sps/grid.hpp"
#include "sps/model.hpp"
#include "sps/poisson.hpp"
#include "sps/sine_transform.hpp"

namespace sps {

struct TsspConfig {
  double dt = 0.01;
  double t_final = 10.0;
  int record_every = 1;
  std::vector<double> snapshot_times;

  /// Number of steps to reach t_final. Throws unless t_final is a whole number of steps.
  long long steps() const {
    const double n = t_final / dt;
    const long long rounded = std::llround(n);
    if (std::abs(n - static_cast<double>(rounded)) > 1e-9 * std::max(1.0, n))
      throw ConfigError("t_final", "t_final must be an integer multiple of dt");
    return rounded;
  }

  /// Step index for a snapshot time. Throws unless t lies on the step lattice within [0, t_final].
  long long snapshot_step(double t) const {
    if (t < 0.0 || t > t_final * (1.0 + 1e-12))
      throw ConfigError("snapshot_times", "snapshot time " + std::to_string(t) + " outside [0, t_final]");
    const double n = t / dt;
    const long long rounded = std::llround(n);
    if (std::abs(n - static_cast<double>(rounded)) > 1e-9 * std::max(1.0, n))
      throw ConfigError("snapshot_times", "snapshot time " + std::to_string(t) + " is not a multiple of dt");
    return rounded;
  }

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "time step must be positive");
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final", "must be nonnegative");
    if (record_every < 1) throw ConfigError("record_every", "must be at least 1");
    steps();
    for (double t : snapshot_times) snapshot_step(t);
  }
};

struct Snapshot {
  double time = 0.0;
  std::vector<complex> psi;  ///< psi(r_j), j = 0..J
};

struct DynamicsTrace {
  std::vector<ObservableSet> observables;
  std::vector<Snapshot> snapshots;
};

/// Optional callbacks fired as records are produced, e.g. to stream them to disk.
struct EvolveHooks {
  std::function<void(const ObservableSet&)> on_observable;
  std::function<void(const Snapshot&)> on_snapshot;
};

namespace detail {

// The kinetic factor is applied in extended precision. In double, the rounded phases
// and FFT twiddles make each step very slightly non-unitary, and because the same
// multipliers act on a slowly varying spectrum every step, the mass error grows
// linearly (about 1e-16 per step) instead of as a random walk.
using wide_complex = std::complex<long double>;

inline std::vector<wide_complex> kinetic_phases(const RadialGrid& g, double dt) {
  std::vector<wide_complex> out(g.interior_size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    const long double mu = g.slot_frequency(m);
    out[m] = std::polar(1.0L, -static_cast<long double>(dt) * mu * mu / 4.0L);
  }
  return out;
}

inline ComplexField apply_kinetic(const ComplexField& u, const std::vector<wide_complex>& phases) {
  return wide_spectral_multiply(u, phases);
}

inline ComplexField apply_potential(ComplexField u, const RealField& vext, const PhysicsParams& params, double dt) {
  const RadialGrid& g = u.grid();
  const bool coupled = params.c_p != 0.0;
  const RealField w = coupled ? hartree_term(hartree_from_u(u), params.c_p) : RealField(g);
  for (std::size_t i = 0; i < u.size(); ++i) {
    double pot = vext[i] + w[i];
    if (params.alpha != 0.0) {
      const double a = std::abs(u[i]);
      if (a > 0.0) pot -= params.alpha * std::pow(two_sqrt_pi * g.interior_node(i), -2.0 / 3.0) * std::cbrt(a * a);
    }
    u[i] = complex(wide_complex(u[i]) * std::polar(1.0L, -static_cast<long double>(dt) * pot));
  }
  return u;
}

}  // namespace detail

/// U~_k <- exp(-i dt mu_k^2 / 4) U~_k.
inline ComplexField kinetic_half_step(const ComplexField& u, double dt) {
  return detail::apply_kinetic(u, detail::kinetic_phases(u.grid(), dt));
}

/// Pointwise phase with the full effective potential evaluated at U itself.
inline ComplexField potential_step(const ComplexField& u, const PhysicsParams& params, double dt) {
  return detail::apply_potential(u, params.potential.sample_interior(u.grid()), params, dt);
}

/// Precomputes the kinetic phases and V_ext samples for repeated steps at a fixed dt.
class TsspPropagator {
 public:
  TsspPropagator(const RadialGrid& grid, PhysicsParams params, double dt)
      : grid_(grid),
        params_(std::move(params)),
        dt_(dt),
        phases_(detail::kinetic_phases(grid, dt)),
        vext_(params_.potential.sample_interior(grid)) {}

  ComplexField step(const ComplexField& u) const {
    detail::require_same_grid(grid_, u.grid());
    ComplexField half = detail::apply_kinetic(u, phases_);
    half = detail::apply_potential(std::move(half), vext_, params_, dt_);
    return detail::apply_kinetic(half, phases_);
  }

  double dt() const noexcept { return dt_; }
  const RadialGrid& grid() const noexcept { return grid_; }

 private:
  RadialGrid grid_;
  PhysicsParams params_;
  double dt_;
  std::vector<detail::wide_complex> phases_;
  RealField vext_;
};

inline ComplexField tssp_step(const ComplexField& u, const PhysicsParams& params, double dt) {
  return TsspPropagator(u.grid(), params, dt).step(u);
}

/// Mass, self-consistent energy and |psi(0)| of a state.
inline ObservableSet observe(const ComplexField& u, const PhysicsParams& params, double time) {
  ObservableSet obs;
  obs.time = time;
  obs.mass = mass(u);
  obs.energy = energy(u, hartree_from_u(u), params);
  obs.psi_origin_abs = std::abs(derivative_at_origin(dst_forward(u))) / two_sqrt_pi;
  return obs;
}

inline DynamicsTrace evolve(const ComplexField& u0, const PhysicsParams& params, const TsspConfig& config,
                            const EvolveHooks& hooks = {}) {
  params.validate();
  config.validate();
  const double m0 = mass(u0);
  if (std::abs(m0 - 1.0) > 1e-8)
    throw ConfigError("initial", "initial state must have unit mass, got " + std::to_string(m0));

  const long long steps = config.steps();
  std::vector<long long> snap_steps;
  for (double t : config.snapshot_times) snap_steps.push_back(config.snapshot_step(t));

  DynamicsTrace trace;
  auto take_snapshots = [&](const ComplexField& u, long long n) {
    for (std::size_t s = 0; s < snap_steps.size(); ++s) {
      if (snap_steps[s] != n) continue;
      trace.snapshots.push_back({config.snapshot_times[s], psi_from_u(u)});
      if (hooks.on_snapshot) hooks.on_snapshot(trace.snapshots.back());
    }
  };
  auto record = [&](const ComplexField& u, double t) {
    trace.observables.push_back(observe(u, params, t));
    if (hooks.on_observable) hooks.on_observable(trace.observables.back());
  };

  const TsspPropagator prop(u0.grid(), params, config.dt);
  ComplexField u = u0;
  record(u, 0.0);
  take_snapshots(u, 0);

  for (long long n = 1; n <= steps; ++n) {
    u = prop.step(u);
    const double t = static_cast<double>(n) * config.dt;
    if (!std::isfinite(mass(u))) throw NumericalError("non-finite state at t = " + std::to_string(t));
    if (n % config.record_every == 0 || n == steps) record(u, t);
    take_snapshots(u, n);
  }
  return trace;
}

}  // namespace sps
