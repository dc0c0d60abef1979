#pragma once

// Closed-form solutions used as references.

#include <cmath>
#include <numbers>

namespace sps::oracle {

/// Ground state of -Delta/2 + r^2/2 in 3D, unit mass; energy 3/2.
inline double harmonic_psi(double r) { return std::pow(std::numbers::pi, -0.75) * std::exp(-0.5 * r * r); }

/// Unit-mass Gaussian (2 pi)^{-3/4} exp(-r^2/4).
inline double gaussian_psi(double r) { return std::pow(2.0 * std::numbers::pi, -0.75) * std::exp(-0.25 * r * r); }

/// V = 4 pi r V_P for the density |gaussian_psi|^2 (a standard normal in 3D): erf(r / sqrt 2).
inline double gaussian_v(double r) { return std::erf(r / std::numbers::sqrt2); }

/// V_P itself; the r -> 0 limit is sqrt(2/pi) / (4 pi).
inline double gaussian_vp(double r) {
  if (r == 0.0) return std::sqrt(2.0 / std::numbers::pi) / (4.0 * std::numbers::pi);
  return gaussian_v(r) / (4.0 * std::numbers::pi * r);
}

}  // namespace sps::oracle
