#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "sps/errors.hpp"

namespace sps {

/// Thomas algorithm for a tridiagonal system. lower[0] and upper[n-1] are ignored.
inline std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                             std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n)
    throw std::invalid_argument("tridiagonal system: inconsistent sizes");
  std::vector<double> c(n), x(n);
  double pivot = diag[0];
  if (pivot == 0.0) throw NumericalError("tridiagonal system is singular at row 0");
  c[0] = upper[0] / pivot;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot))
      throw NumericalError("tridiagonal system is singular at row " + std::to_string(i));
    c[i] = upper[i] / pivot;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

}  // namespace sps
