#pragma once

// Reference ground-state solver: backward Euler finite differences on the
// untransformed radial model in psi variables, nodes j = 0..J.
//
//   Laplacian   phi'' + 2 phi'/r by central differences, 3 phi''(0) at the origin
//               with phi'(0) = 0 through a ghost node; phi_J = 0.
//   Hartree     -(V'' + 2 V'/r) = phi^2, V'(0) = 0, V'(R) + V(R)/R = 0 (monopole far field).
//   Mass        4 pi h sum_j w_j r_j^2 phi_j^2 with trapezoidal weights.
//
// Second order in h. Shares the outer gradient-flow loop with the spectral solver.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sps/errors.hpp"
#include "sps/gradient_flow.hpp"
#include "sps/grid.hpp"
#include "sps/log.hpp"
#include "sps/model.hpp"
#include "sps/tridiagonal.hpp"

namespace sps {

/// psi-space state on all nodes j = 0..J.
struct BefdState {
  std::vector<double> phi;
  std::vector<double> vp;  ///< Hartree potential V_P
};

struct BefdResult {
  BefdState state;
  double energy = 0.0;
  int outer_iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

namespace detail {
inline void require_node_count(const RadialGrid& grid, std::size_t n) {
  if (n != static_cast<std::size_t>(grid.intervals()) + 1)
    throw std::invalid_argument("expected J+1 = " + std::to_string(grid.intervals() + 1) + " node values, got " +
                                std::to_string(n));
}
}  // namespace detail

/// 4 pi h sum_j w_j r_j^2 phi_j^2.
inline double befd_mass(const RadialGrid& grid, std::span<const double> phi) {
  detail::require_node_count(grid, phi.size());
  const int J = grid.intervals();
  double sum = 0.0;
  for (int j = 1; j < J; ++j) sum += grid.node(j) * grid.node(j) * phi[j] * phi[j];
  sum += 0.5 * grid.radius() * grid.radius() * phi[J] * phi[J];
  return 4.0 * std::numbers::pi * grid.spacing() * sum;
}

/// Radial Poisson solve for V_P with Neumann at r = 0 and the Robin closure at r = R.
inline std::vector<double> befd_hartree(const RadialGrid& grid, std::span<const double> phi) {
  detail::require_node_count(grid, phi.size());
  const int J = grid.intervals();
  const double h = grid.spacing();
  const double R = grid.radius();
  const double ih2 = 1.0 / (h * h);
  const auto n = static_cast<std::size_t>(J) + 1;
  std::vector<double> lo(n, 0.0), di(n, 0.0), up(n, 0.0), rhs(n, 0.0);

  di[0] = 6.0 * ih2;
  up[0] = -6.0 * ih2;
  for (int j = 1; j < J; ++j) {
    const double c = 1.0 / (grid.node(j) * h);
    lo[j] = -ih2 + c;
    di[j] = 2.0 * ih2;
    up[j] = -ih2 - c;
  }
  // Ghost node V_{J+1} = V_{J-1} - 2 h V_J / R.
  lo[J] = -2.0 * ih2;
  di[J] = 2.0 * ih2 + 2.0 / (h * R) + 2.0 / (R * R);
  for (std::size_t j = 0; j < n; ++j) rhs[j] = phi[j] * phi[j];
  return solve_tridiagonal(lo, di, up, rhs);
}

/// 3D energy quadrature of a psi-space state; kinetic term on the staggered midpoints.
inline double befd_energy(const RadialGrid& grid, const BefdState& s, const PhysicsParams& params) {
  const int J = grid.intervals();
  const double h = grid.spacing();
  const auto vext = params.potential.sample_nodes(grid);
  double kin = 0.0;
  for (int j = 0; j < J; ++j) {
    const double rm = grid.node(j) + 0.5 * h;
    const double d = (s.phi[j + 1] - s.phi[j]) / h;
    kin += 0.5 * rm * rm * d * d;
  }
  double pot = 0.0;
  for (int j = 0; j <= J; ++j) {
    const double w = (j == J) ? 0.5 : 1.0;  // r_0 = 0 kills the j = 0 term
    const double r2 = grid.node(j) * grid.node(j);
    const double p2 = s.phi[j] * s.phi[j];
    double e = (vext[j] + 0.5 * params.c_p * s.vp[j]) * p2;
    if (params.alpha != 0.0) e -= 0.75 * params.alpha * std::pow(p2, 4.0 / 3.0);
    pot += w * r2 * e;
  }
  return 4.0 * std::numbers::pi * h * (kin + pot);
}

inline std::vector<double> befd_normalize(const RadialGrid& grid, std::vector<double> phi) {
  const double m = befd_mass(grid, phi);
  if (!(m > 0.0) || !std::isfinite(m)) throw NumericalError("BEFD gradient flow collapsed before normalization");
  const double s = 1.0 / std::sqrt(m);
  for (auto& v : phi) v *= s;
  return phi;
}

inline BefdResult befd_ground_state(const PhysicsParams& params, const RadialGrid& grid, const GfdnConfig& config) {
  params.validate();
  config.validate();
  const int J = grid.intervals();
  const double h = grid.spacing();
  const double ih2 = 1.0 / (h * h);
  const double inv_dt = 1.0 / config.dt;
  const auto vext = params.potential.sample_nodes(grid);

  std::vector<double> phi0;
  if (config.initial_guess) {
    detail::require_same_grid(grid, config.initial_guess->grid());
    phi0 = psi_from_u(*config.initial_guess);
  } else {
    phi0.resize(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) {
      const double r = grid.node(j);
      phi0[j] = std::pow(std::numbers::pi, -0.75) * std::exp(-0.5 * r * r);
    }
  }
  phi0.back() = 0.0;
  phi0 = befd_normalize(grid, std::move(phi0));

  // Unknowns phi_0..phi_{J-1}; phi_J = 0.
  const auto n = static_cast<std::size_t>(J);
  std::vector<double> lo(n), di(n), up(n), rhs(n);

  auto step = [&](const std::vector<double>& phi) {
    const auto vp = befd_hartree(grid, phi);
    for (std::size_t j = 0; j < n; ++j) {
      double b = vext[j] + params.c_p * vp[j];
      if (params.alpha != 0.0) b -= params.alpha * std::cbrt(phi[j] * phi[j]);
      if (j == 0) {
        lo[j] = 0.0;
        di[j] = inv_dt + b + 3.0 * ih2;
        up[j] = -3.0 * ih2;
      } else {
        const double c = 1.0 / (grid.node(static_cast<int>(j)) * h);
        lo[j] = -0.5 * (ih2 - c);
        di[j] = inv_dt + b + ih2;
        up[j] = -0.5 * (ih2 + c);
      }
      rhs[j] = phi[j] * inv_dt;
    }
    auto next = solve_tridiagonal(lo, di, up, rhs);
    next.push_back(0.0);
    return befd_normalize(grid, std::move(next));
  };
  auto distance = [](const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
  };

  auto flow = run_gradient_flow(std::move(phi0), step, distance, config);
  if (!flow.converged)
    log::warn("BEFD gradient flow stopped after " + std::to_string(flow.iterations) + " steps (residual " +
              std::to_string(flow.residual) + ")");

  BefdResult out;
  out.state.phi = std::move(flow.state);
  out.state.vp = befd_hartree(grid, out.state.phi);
  out.energy = befd_energy(grid, out.state, params);
  out.outer_iterations = flow.iterations;
  out.residual = flow.residual;
  out.converged = flow.converged;
  return out;
}

}  // namespace sps
