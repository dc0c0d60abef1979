#pragma once

// Physics parameters, the change of variables U = 2 sqrt(pi) r psi, and the
// discrete mass and energy functionals of the reduced radial model.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "sps/errors.hpp"
#include "sps/grid.hpp"
#include "sps/log.hpp"
#include "sps/poisson.hpp"
#include "sps/sine_transform.hpp"

namespace sps {

/// 2 sqrt(pi), the radial change-of-variables factor.
inline constexpr double two_sqrt_pi = 2.0 / std::numbers::inv_sqrtpi;

/// External potential V_ext(r).
class ExternalPotential {
 public:
  struct Zero {};
  /// V_ext = gamma^2 r^2 / 2.
  struct Harmonic {
    double gamma = 1.0;
  };
  /// Values on every node j = 0..J of the run grid.
  struct Tabulated {
    std::vector<double> node_values;
  };

  ExternalPotential() = default;

  static ExternalPotential zero() { return ExternalPotential(Zero{}); }

  static ExternalPotential harmonic(double gamma = 1.0) {
    if (!std::isfinite(gamma)) throw ConfigError("potential", "harmonic frequency must be finite");
    return ExternalPotential(Harmonic{gamma});
  }

  static ExternalPotential tabulated(std::vector<double> node_values) {
    for (double v : node_values)
      if (!std::isfinite(v)) throw ConfigError("potential", "tabulated potential contains a non-finite value");
    return ExternalPotential(Tabulated{std::move(node_values)});
  }

  const auto& kind() const noexcept { return kind_; }

  bool is_zero() const noexcept { return std::holds_alternative<Zero>(kind_); }

  /// V_ext(r_j) for j = 0..J.
  std::vector<double> sample_nodes(const RadialGrid& grid) const {
    const auto n = static_cast<std::size_t>(grid.intervals()) + 1;
    if (const auto* tab = std::get_if<Tabulated>(&kind_)) {
      if (tab->node_values.size() != n)
        throw ConfigError("potential", "tabulated potential has " + std::to_string(tab->node_values.size()) +
                                           " values but the grid has " + std::to_string(n) + " nodes");
      return tab->node_values;
    }
    std::vector<double> out(n, 0.0);
    if (const auto* h = std::get_if<Harmonic>(&kind_)) {
      for (std::size_t j = 0; j < n; ++j) {
        const double r = grid.node(static_cast<int>(j));
        out[j] = 0.5 * h->gamma * h->gamma * r * r;
      }
    }
    return out;
  }

  /// V_ext on the interior nodes, as a field.
  RealField sample_interior(const RadialGrid& grid) const {
    auto nodes = sample_nodes(grid);
    return RealField(grid, std::vector<double>(nodes.begin() + 1, nodes.end() - 1));
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    if (std::holds_alternative<Zero>(kind_)) os << "zero";
    else if (const auto* h = std::get_if<Harmonic>(&kind_)) os << "harmonic:" << h->gamma;
    else os << "tabulated(" << std::get<Tabulated>(kind_).node_values.size() << " nodes)";
    return os.str();
  }

 private:
  explicit ExternalPotential(std::variant<Zero, Harmonic, Tabulated> k) : kind_(std::move(k)) {}

  std::variant<Zero, Harmonic, Tabulated> kind_{Zero{}};
};

struct PhysicsParams {
  double c_p = 0.0;    ///< Hartree coupling; positive is repulsive.
  double alpha = 0.0;  ///< Slater exchange coefficient.
  ExternalPotential potential;

  void validate() const {
    if (!std::isfinite(c_p)) throw ConfigError("c_p", "must be finite");
    if (!std::isfinite(alpha)) throw ConfigError("alpha", "must be finite");
    if (alpha < 0.0) log::warn("alpha < 0: Slater term acts with the non-physical sign");
  }
};

/// Diagnostics recorded along a trajectory.
struct ObservableSet {
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double psi_origin_abs = 0.0;
};

/// U_j = 2 sqrt(pi) r_j psi_j on the interior. `psi` holds nodes j = 0..J; the endpoints are dropped.
template <class T>
RadialField<T> u_from_psi(std::span<const T> psi, const RadialGrid& grid) {
  if (psi.size() != grid.interior_size() + 2)
    throw std::invalid_argument("psi needs J+1 node values, got " + std::to_string(psi.size()));
  RadialField<T> u(grid);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = two_sqrt_pi * grid.interior_node(i) * psi[i + 1];
  return u;
}

template <class T>
RadialField<T> u_from_psi(const std::vector<T>& psi, const RadialGrid& grid) {
  return u_from_psi(std::span<const T>(psi), grid);
}

/// psi on nodes j = 0..J. The origin value is the spectral derivative of U at r = 0
/// divided by 2 sqrt(pi); psi_J = 0.
template <class T>
std::vector<T> psi_from_u(const RadialField<T>& u) {
  const RadialGrid& g = u.grid();
  std::vector<T> psi(g.interior_size() + 2, T{});
  psi.front() = derivative_at_origin(dst_forward(u)) / two_sqrt_pi;
  for (std::size_t i = 0; i < u.size(); ++i) psi[i + 1] = u[i] / (two_sqrt_pi * g.interior_node(i));
  return psi;
}

/// Discrete mass h_r sum |U_j|^2.
template <class T>
double mass(const RadialField<T>& u) {
  double sum = 0.0;
  for (const auto& v : u.values()) sum += std::norm(v);
  return u.grid().spacing() * sum;
}

/// Energy split into its four contributions.
struct EnergyParts {
  double kinetic = 0.0;
  double external = 0.0;
  double hartree = 0.0;
  double exchange = 0.0;

  double total() const noexcept { return kinetic + external + hartree + exchange; }
};

/// Discrete energy of U given the homogenized Hartree field computed from it.
///
/// Kinetic term by Parseval, (R/4) sum mu_k^2 |U~_k|^2. The remaining terms use
/// the interior rectangle rule h_r sum_{j=1}^{J-1}, with V_j = vbar_j + r_j / R.
template <class T>
EnergyParts energy_parts(const RadialField<T>& u, const HartreeBar& vbar, const PhysicsParams& params) {
  const RadialGrid& g = u.grid();
  detail::require_same_grid(g, vbar.grid());

  EnergyParts e;
  const auto spec = dst_forward(u);
  double kin = 0.0;
  for (std::size_t m = 0; m < spec.size(); ++m) {
    const double mu = spec.mu(m);
    kin += mu * mu * std::norm(spec[m]);
  }
  e.kinetic = 0.25 * g.radius() * kin;

  const RealField vext = params.potential.sample_interior(g);
  const double h = g.spacing();
  const double inv_r_max = 1.0 / g.radius();
  const double hartree_scale = params.c_p / (8.0 * std::numbers::pi);
  double ext = 0.0, har = 0.0, xc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = g.interior_node(i);
    const double dens = std::norm(u[i]);
    ext += vext[i] * dens;
    har += (vbar[i] / r + inv_r_max) * dens;
    if (params.alpha != 0.0 && dens > 0.0)
      xc += std::pow(two_sqrt_pi * r, -2.0 / 3.0) * std::pow(dens, 4.0 / 3.0);
  }
  e.external = h * ext;
  e.hartree = h * hartree_scale * har;
  e.exchange = -0.75 * params.alpha * h * xc;
  return e;
}

template <class T>
double energy(const RadialField<T>& u, const HartreeBar& vbar, const PhysicsParams& params) {
  return energy_parts(u, vbar, params).total();
}

/// U-variable form of psi_0(r) = (2 pi sigma^2)^{-3/4} exp(-r^2 / (4 sigma^2)), a unit-mass Gaussian.
/// sigma = 1 is the standard dynamics initial datum; sigma = 1/sqrt(2) is the harmonic ground state.
template <class T = complex>
RadialField<T> gaussian_initial(const RadialGrid& grid, double sigma = 1.0) {
  if (!(sigma > 0.0)) throw ConfigError("initial", "Gaussian width must be positive");
  const double amp = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.75);
  auto u = RadialField<T>::sample(grid, [&](double r) {
    return two_sqrt_pi * r * amp * std::exp(-r * r / (4.0 * sigma * sigma));
  });
  const double m = mass(u);
  if (std::abs(m - 1.0) > 1e-6)
    log::warn("Gaussian initial datum has discrete mass " + std::to_string(m) + "; domain radius too small?");
  return u;
}

/// Mass carried by nodes with r_j > r0.
template <class T>
double tail_mass(const RadialField<T>& u, double r0) {
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.grid().interior_node(i) > r0) sum += std::norm(u[i]);
  return u.grid().spacing() * sum;
}

}  // namespace sps
