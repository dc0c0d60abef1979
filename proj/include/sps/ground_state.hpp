#pragma once

// Ground state by the backward Euler sine pseudospectral discretization of the
// normalized gradient flow. Each step solves
//
//   (1/dt - D_rr^s / 2 + diag(b)) phi+ = phi^n / dt,
//   b_j = V_ext(r_j) + W_j(phi^n) - alpha (2 sqrt(pi) r_j)^{-2/3} |phi^n_j|^{2/3},
//
// and renormalizes phi+ to unit discrete mass.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sps/errors.hpp"
#include "sps/gradient_flow.hpp"
#include "sps/grid.hpp"
#include "sps/log.hpp"
#include "sps/model.hpp"
#include "sps/poisson.hpp"
#include "sps/sine_transform.hpp"

namespace sps {

struct GroundStateResult {
  RealField phi_u;             ///< converged state in U variables
  std::vector<double> phi_psi; ///< phi_g(r_j), j = 0..J
  double energy = 0.0;
  int outer_iterations = 0;
  double residual = 0.0;
  bool converged = false;
  int energy_increases = 0;    ///< steps where the energy rose by more than 1e-10 |E|
};

struct InnerSolveResult {
  RealField phi_plus;
  int sweeps = 0;
  double residual = 0.0;  ///< max_j of the assembled residual at return
};

/// b_j from a precomputed Hartree field and sampled V_ext.
inline RealField effective_potential(const RealField& phi, const HartreeBar& vbar, const RealField& vext,
                                     const PhysicsParams& params) {
  const RadialGrid& g = phi.grid();
  RealField b = hartree_term(vbar, params.c_p);
  for (std::size_t i = 0; i < b.size(); ++i) {
    b[i] += vext[i];
    if (params.alpha != 0.0 && phi[i] != 0.0)
      b[i] -= params.alpha * std::pow(two_sqrt_pi * g.interior_node(i), -2.0 / 3.0) *
              std::pow(std::abs(phi[i]), 2.0 / 3.0);
  }
  return b;
}

inline RealField effective_potential(const RealField& phi, const PhysicsParams& params) {
  return effective_potential(phi, hartree_from_u(phi), params.potential.sample_interior(phi.grid()), params);
}

/// Solves (1/dt - D_rr^s/2 + diag(b)) phi+ = phi_n/dt by a shifted fixed-point iteration.
///
/// Each sweep inverts (1/dt + s - D_rr^s/2), diagonal in sine space, with
/// s = (max b + min b)/2, and moves (s - b) phi to the right-hand side. The
/// contraction factor is max|b - s| / (1/dt + s + mu_1^2/2). Since the residual
/// after a sweep equals (s - b)(phi_old - phi_new), it costs nothing extra.
inline InnerSolveResult besp_linear_solve(const RealField& phi_n, const RealField& b, double dt, double tol_inner,
                                          int max_inner) {
  const RadialGrid& g = phi_n.grid();
  detail::require_same_grid(g, b.grid());
  if (!(dt > 0.0)) throw ConfigError("dt", "time step must be positive");
  for (double v : b.values())
    if (!std::isfinite(v)) throw NumericalError("effective potential is not finite");

  const auto [bmin, bmax] = std::minmax_element(b.values().begin(), b.values().end());
  const double shift = 0.5 * (*bmax + *bmin);
  const double inv_dt = 1.0 / dt;

  std::vector<double> denom(g.interior_size());
  for (std::size_t m = 0; m < denom.size(); ++m) {
    const double mu = g.slot_frequency(m);
    denom[m] = inv_dt + shift + 0.5 * mu * mu;
  }
  if (denom.front() <= 0.0)
    throw NumericalError("shifted operator is not positive; reduce dt or check the potential");

  RealField rhs0 = phi_n;
  rhs0 *= inv_dt;
  double scale = 0.0;
  for (double v : rhs0.values()) scale = std::max(scale, std::abs(v));
  const double target = tol_inner * std::max(scale, 1e-300);

  InnerSolveResult out{phi_n};
  RealField rhs(g);
  for (int sweep = 1; sweep <= max_inner; ++sweep) {
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = rhs0[i] + (shift - b[i]) * out.phi_plus[i];
    auto spec = scale_modes(dst_forward(rhs), [&](std::size_t m, double) { return 1.0 / denom[m]; });
    RealField next = dst_inverse(spec);

    double res = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i)
      res = std::max(res, std::abs((shift - b[i]) * (out.phi_plus[i] - next[i])));
    out.phi_plus = std::move(next);
    out.sweeps = sweep;
    out.residual = res;
    if (res <= target) return out;
  }
  throw ConvergenceError("inner BESP solve did not converge in " + std::to_string(max_inner) +
                             " sweeps (residual " + std::to_string(out.residual) + "); reduce dt",
                         out.residual);
}

/// phi+ / ||phi+||_h.
inline RealField besp_normalize(RealField phi_plus) {
  const double norm = norm_h(phi_plus);
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw NumericalError("gradient flow collapsed to zero (or blew up) before normalization");
  phi_plus *= 1.0 / norm;
  return phi_plus;
}

/// u_from_psi of pi^{-3/4} exp(-r^2/2), renormalized on the grid.
inline RealField default_ground_state_guess(const RadialGrid& grid) {
  const double amp = std::pow(std::numbers::pi, -0.75);
  return besp_normalize(
      RealField::sample(grid, [&](double r) { return two_sqrt_pi * r * amp * std::exp(-0.5 * r * r); }));
}

inline double sup_distance(const RealField& a, const RealField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline GroundStateResult compute_ground_state(const PhysicsParams& params, const RadialGrid& grid,
                                              const GfdnConfig& config) {
  params.validate();
  config.validate();

  RealField phi0 = config.initial_guess ? *config.initial_guess : default_ground_state_guess(grid);
  detail::require_same_grid(grid, phi0.grid());
  if (std::abs(mass(phi0) - 1.0) > 1e-12)
    throw ConfigError("initial_guess", "initial guess must have unit mass, got " + std::to_string(mass(phi0)));

  const RealField vext = params.potential.sample_interior(grid);
  double last_energy = 0.0;
  bool have_energy = false;
  int increases = 0;

  auto step = [&](const RealField& phi) {
    const HartreeBar vbar = hartree_from_u(phi);
    if (config.monitor_energy) {
      const double e = energy(phi, vbar, params);
      if (have_energy && e - last_energy > 1e-10 * std::abs(last_energy)) ++increases;
      last_energy = e;
      have_energy = true;
    }
    const RealField b = effective_potential(phi, vbar, vext, params);
    auto inner = besp_linear_solve(phi, b, config.dt, config.tol_inner, config.max_inner);
    return besp_normalize(std::move(inner.phi_plus));
  };

  auto flow = run_gradient_flow(std::move(phi0), step, sup_distance, config);

  // Fix the global sign: nonnegative at the first interior node.
  if (flow.state[0] < 0.0) flow.state *= -1.0;

  if (increases > 0)
    log::warn("energy increased on " + std::to_string(increases) + " gradient-flow step(s)");
  if (!flow.converged)
    log::warn("gradient flow stopped after " + std::to_string(flow.iterations) +
              " steps without reaching tol_outer (residual " + std::to_string(flow.residual) + ")");

  GroundStateResult out{flow.state};
  out.phi_psi = psi_from_u(flow.state);
  out.energy = energy(flow.state, hartree_from_u(flow.state), params);
  out.outer_iterations = flow.iterations;
  out.residual = flow.residual;
  out.converged = flow.converged;
  out.energy_increases = increases;
  return out;
}

}  // namespace sps
