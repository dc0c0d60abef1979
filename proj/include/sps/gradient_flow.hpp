#pragma once

// Outer loop of the gradient flow with discrete normalization, shared by the
// spectral and finite-difference ground-state solvers so that comparisons
// between them differ only in the spatial discretization.

#include <cmath>
#include <optional>
#include <string>

#include "sps/errors.hpp"
#include "sps/grid.hpp"

namespace sps {

struct GfdnConfig {
  double dt = 0.01;
  double tol_outer = 1e-10;  ///< on max_j |phi^{n+1}_j - phi^n_j| / dt
  double tol_inner = 1e-12;  ///< relative to max_j |phi^n_j| / dt
  int max_outer = 200000;
  int max_inner = 500;
  /// Starting state in U variables; unit mass required. Defaults to the harmonic-oscillator Gaussian.
  std::optional<RealField> initial_guess;
  /// Track the energy along the flow and warn if it increases.
  bool monitor_energy = true;

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "time step must be positive");
    if (!(tol_outer > 0.0 && tol_outer < 1.0)) throw ConfigError("tol_outer", "must lie in (0, 1)");
    if (!(tol_inner > 0.0 && tol_inner < 1.0)) throw ConfigError("tol_inner", "must lie in (0, 1)");
    if (max_outer < 1) throw ConfigError("max_outer", "must be at least 1");
    if (max_inner < 1) throw ConfigError("max_inner", "must be at least 1");
  }
};

template <class State>
struct FlowOutcome {
  State state;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Iterates state <- step(state) until distance(new, old) / dt <= tol_outer or max_outer steps.
template <class State, class Step, class Distance>
FlowOutcome<State> run_gradient_flow(State state, Step&& step, Distance&& distance, const GfdnConfig& cfg) {
  FlowOutcome<State> out{std::move(state)};
  for (int n = 1; n <= cfg.max_outer; ++n) {
    State next = step(out.state);
    out.residual = distance(next, out.state) / cfg.dt;
    out.state = std::move(next);
    out.iterations = n;
    if (!std::isfinite(out.residual))
      throw NumericalError("gradient flow produced a non-finite state at step " + std::to_string(n));
    if (out.residual <= cfg.tol_outer) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace sps
