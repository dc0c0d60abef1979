#pragma once

// Hartree potential of the reduced model.
//
// With V = 4 pi r V_P and the translation Vbar = V - r/R, the radial Poisson
// problem becomes -Vbar'' = |U|^2 / r on (0, R) with Vbar(0) = Vbar(R) = 0,
// which the sine basis diagonalizes: Vbar~_k = rho~_k / mu_k^2.

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "sps/grid.hpp"
#include "sps/sine_transform.hpp"

namespace sps {

/// rho_j = |U_j|^2 / r_j on the interior nodes.
class DensityRho {
 public:
  explicit DensityRho(RealField values) : values_(std::move(values)) {}

  const RealField& field() const noexcept { return values_; }
  const RadialGrid& grid() const noexcept { return values_.grid(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  RealField values_;
};

/// Homogenized Hartree field Vbar on the interior nodes. V = Vbar + r/R, V_P = V / (4 pi r).
class HartreeBar {
 public:
  explicit HartreeBar(RealField values) : values_(std::move(values)) {}

  const RealField& field() const noexcept { return values_; }
  const RadialGrid& grid() const noexcept { return values_.grid(); }
  std::span<const double> values() const noexcept { return values_.values(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// V_j = Vbar_j + r_j / R.
  double full(std::size_t i) const noexcept { return values_[i] + grid().interior_node(i) / grid().radius(); }

 private:
  RealField values_;
};

template <class T>
DensityRho density_from_u(const RadialField<T>& u) {
  const RadialGrid& g = u.grid();
  RealField rho(g);
  for (std::size_t i = 0; i < u.size(); ++i) rho[i] = std::norm(u[i]) / g.interior_node(i);
  return DensityRho(std::move(rho));
}

/// Solves -D_rr^s Vbar = rho in sine space.
inline HartreeBar solve_hartree_bar(const DensityRho& rho) {
  auto spec = scale_modes(dst_forward(rho.field()), [](std::size_t, double mu) { return 1.0 / (mu * mu); });
  return HartreeBar(dst_inverse(spec));
}

template <class T>
HartreeBar hartree_from_u(const RadialField<T>& u) {
  return solve_hartree_bar(density_from_u(u));
}

/// W_j = C_P Vbar_j / (4 pi r_j) + C_P / (4 pi R): the Hartree part of the effective potential,
/// with the constant from the translation folded in.
inline RealField hartree_term(const HartreeBar& vbar, double c_p) {
  const RadialGrid& g = vbar.grid();
  const double scale = c_p / (4.0 * std::numbers::pi);
  const double shift = scale / g.radius();
  RealField w(g);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = scale * vbar[i] / g.interior_node(i) + shift;
  return w;
}

}  // namespace sps
