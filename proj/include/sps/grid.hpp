#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "sps/errors.hpp"

namespace sps {

using complex = std::complex<double>;

/// Uniform radial grid on [0, R] with J subintervals, nodes r_j = j * R / J.
///
/// Fields live on the interior nodes j = 1..J-1 only; the Dirichlet endpoints
/// are not stored anywhere in the library.
class RadialGrid {
 public:
  RadialGrid(double radius, int intervals) : radius_(radius), intervals_(intervals) {
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw ConfigError("R", "domain radius must be positive and finite, got " + std::to_string(radius));
    if (intervals < 4)
      throw ConfigError("J", "need at least 4 subintervals, got " + std::to_string(intervals));
    if (intervals % 2 != 0)
      throw ConfigError("J", "number of subintervals must be even, got " + std::to_string(intervals));
    spacing_ = radius / intervals;
  }

  double radius() const noexcept { return radius_; }
  int intervals() const noexcept { return intervals_; }
  double spacing() const noexcept { return spacing_; }

  /// Number of stored unknowns, J - 1.
  std::size_t interior_size() const noexcept { return static_cast<std::size_t>(intervals_ - 1); }

  /// r_j for j = 0..J. r_J is returned as R exactly.
  double node(int j) const noexcept { return j == intervals_ ? radius_ : j * spacing_; }

  /// Radius of storage slot i, which holds node j = i + 1.
  double interior_node(std::size_t i) const noexcept { return static_cast<double>(i + 1) * spacing_; }

  /// mu_k = k pi / R.
  double frequency(int k) const noexcept { return k * std::numbers::pi / radius_; }

  /// Frequency of spectral slot m, which holds mode k = m + 1.
  double slot_frequency(std::size_t m) const noexcept { return frequency(static_cast<int>(m + 1)); }

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  double radius_;
  int intervals_;
  double spacing_ = 0.0;
};

namespace detail {
template <class T>
inline constexpr bool is_field_scalar_v = std::is_same_v<T, double> || std::is_same_v<T, complex>;

inline void require_same_grid(const RadialGrid& a, const RadialGrid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}
}  // namespace detail

/// Values on the interior nodes of a grid. Slot i holds node j = i + 1.
template <class T>
class RadialField {
  static_assert(detail::is_field_scalar_v<T>, "RadialField holds double or std::complex<double>");

 public:
  using value_type = T;

  explicit RadialField(const RadialGrid& grid) : grid_(grid), values_(grid.interior_size(), T{}) {}

  RadialField(const RadialGrid& grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.interior_size())
      throw std::invalid_argument("field needs J-1 = " + std::to_string(grid_.interior_size()) +
                                  " interior values, got " + std::to_string(values_.size()));
  }

  /// Samples f(r) on the interior nodes.
  template <class F>
  static RadialField sample(const RadialGrid& grid, F&& f) {
    RadialField out(grid);
    for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] = static_cast<T>(f(grid.interior_node(i)));
    return out;
  }

  const RadialGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const T> values() const noexcept { return values_; }
  std::span<T> values() noexcept { return values_; }

  const T& operator[](std::size_t i) const noexcept { return values_[i]; }
  T& operator[](std::size_t i) noexcept { return values_[i]; }

  T* data() noexcept { return values_.data(); }
  const T* data() const noexcept { return values_.data(); }

  RadialField& operator*=(T s) {
    for (auto& v : values_) v *= s;
    return *this;
  }

 private:
  RadialGrid grid_;
  std::vector<T> values_;
};

/// Coefficients against sin(k pi r / R), k = 1..J-1. Slot m holds mode k = m + 1.
template <class T>
class SineSpectrum {
  static_assert(detail::is_field_scalar_v<T>, "SineSpectrum holds double or std::complex<double>");

 public:
  using value_type = T;

  explicit SineSpectrum(const RadialGrid& grid) : grid_(grid), coeffs_(grid.interior_size(), T{}) {}

  SineSpectrum(const RadialGrid& grid, std::vector<T> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.interior_size())
      throw std::invalid_argument("spectrum needs J-1 = " + std::to_string(grid_.interior_size()) +
                                  " coefficients, got " + std::to_string(coeffs_.size()));
  }

  const RadialGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const T> coeffs() const noexcept { return coeffs_; }
  std::span<T> coeffs() noexcept { return coeffs_; }

  const T& operator[](std::size_t m) const noexcept { return coeffs_[m]; }
  T& operator[](std::size_t m) noexcept { return coeffs_[m]; }

  T* data() noexcept { return coeffs_.data(); }
  const T* data() const noexcept { return coeffs_.data(); }

  /// mu_k for slot m.
  double mu(std::size_t m) const noexcept { return grid_.slot_frequency(m); }

 private:
  RadialGrid grid_;
  std::vector<T> coeffs_;
};

using RealField = RadialField<double>;
using ComplexField = RadialField<complex>;

}  // namespace sps
