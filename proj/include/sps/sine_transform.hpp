#pragma once

// Discrete sine transform pair on the interior nodes and the spectral
// operators built from it.
//
//   forward:  c_k = (2/J) sum_{j=1}^{J-1} f_j sin(j k pi / J)
//   inverse:  f_j =       sum_{k=1}^{J-1} c_k sin(j k pi / J)
//
// Both are evaluated with FFTW's RODFT00 (DST-I) in O(J log J); the factors
// 1/J and 1/2 that map FFTW's unnormalized transform onto the pair above are
// applied here and nowhere else.

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "sps/grid.hpp"

namespace sps {

namespace detail {

// FFTW entry points for double and long double.
template <class Real>
struct Fftw;

template <>
struct Fftw<double> {
  using plan = fftw_plan;
  static constexpr auto plan_many_r2r = fftw_plan_many_r2r;
  static constexpr auto execute_r2r = fftw_execute_r2r;
  static constexpr auto destroy_plan = fftw_destroy_plan;
};

template <>
struct Fftw<long double> {
  using plan = fftwl_plan;
  static constexpr auto plan_many_r2r = fftwl_plan_many_r2r;
  static constexpr auto execute_r2r = fftwl_execute_r2r;
  static constexpr auto destroy_plan = fftwl_destroy_plan;
};

/// Process-wide cache of DST-I plans keyed by (length, interleaved components).
/// Planning is serialized; executing a cached plan is thread-safe in FFTW.
template <class Real>
class SinePlanCache {
 public:
  using plan_type = typename Fftw<Real>::plan;

  static SinePlanCache& instance() {
    static SinePlanCache cache;
    return cache;
  }

  plan_type get(std::size_t n, int components) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, components);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::vector<Real> scratch(n * static_cast<std::size_t>(components));
    const int len = static_cast<int>(n);
    const auto kind = FFTW_RODFT00;
    // In-place, interleaved components (re/im of std::complex) with stride = components.
    // FFTW_ESTIMATE keeps plan choice independent of timing noise, so runs are reproducible.
    plan_type plan = Fftw<Real>::plan_many_r2r(1, &len, components, scratch.data(), nullptr, components, 1,
                                               scratch.data(), nullptr, components, 1, &kind,
                                               FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("FFTW could not plan a DST-I of length " + std::to_string(n));
    plans_.emplace(key, plan);
    return plan;
  }

  SinePlanCache(const SinePlanCache&) = delete;
  SinePlanCache& operator=(const SinePlanCache&) = delete;

 private:
  SinePlanCache() = default;
  ~SinePlanCache() {
    for (auto& [key, plan] : plans_) Fftw<Real>::destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, plan_type> plans_;
};

template <class T>
struct scalar_traits {
  using real = T;
  static constexpr int components = 1;
};

template <class R>
struct scalar_traits<std::complex<R>> {
  using real = R;
  static constexpr int components = 2;
};

/// Unnormalized in-place DST-I: y_k = 2 sum_j x_j sin(pi (j+1)(k+1) / (n+1)).
template <class T>
void rodft00_inplace(T* data, std::size_t n) {
  using Real = typename scalar_traits<T>::real;
  auto plan = SinePlanCache<Real>::instance().get(n, scalar_traits<T>::components);
  auto* raw = reinterpret_cast<Real*>(data);
  Fftw<Real>::execute_r2r(plan, raw, raw);
}

/// f -> inverse(multiplier * forward(f)), carried out in extended precision and
/// rounded once at the end. Used where the same multiplier is applied many times
/// and double-precision transform round-off would otherwise accumulate coherently.
inline RadialField<complex> wide_spectral_multiply(const RadialField<complex>& f,
                                                   const std::vector<std::complex<long double>>& multiplier) {
  const RadialGrid& g = f.grid();
  std::vector<std::complex<long double>> work(f.size());
  for (std::size_t i = 0; i < work.size(); ++i) work[i] = f[i];
  rodft00_inplace(work.data(), work.size());
  const long double scale = 0.5L / g.intervals();
  for (std::size_t m = 0; m < work.size(); ++m) work[m] *= scale * multiplier[m];
  rodft00_inplace(work.data(), work.size());
  RadialField<complex> out(g);
  for (std::size_t i = 0; i < work.size(); ++i) out[i] = complex(work[i]);
  return out;
}

}  // namespace detail

template <class T>
SineSpectrum<T> dst_forward(const RadialField<T>& f) {
  const RadialGrid& g = f.grid();
  std::vector<T> work(f.values().begin(), f.values().end());
  detail::rodft00_inplace(work.data(), work.size());
  const double scale = 1.0 / g.intervals();
  for (auto& c : work) c *= scale;
  return SineSpectrum<T>(g, std::move(work));
}

template <class T>
RadialField<T> dst_inverse(const SineSpectrum<T>& s) {
  std::vector<T> work(s.coeffs().begin(), s.coeffs().end());
  detail::rodft00_inplace(work.data(), work.size());
  for (auto& v : work) v *= 0.5;
  return RadialField<T>(s.grid(), std::move(work));
}

/// Multiplies every coefficient by factor(m, mu_k), where m is the slot of mode k = m + 1.
template <class T, class Factor>
SineSpectrum<T> scale_modes(SineSpectrum<T> s, Factor&& factor) {
  for (std::size_t m = 0; m < s.size(); ++m) s[m] *= factor(m, s.mu(m));
  return s;
}

/// D_rr^s f: transform, multiply by -mu_k^2, synthesize.
template <class T>
RadialField<T> laplacian_sine(const RadialField<T>& f) {
  return dst_inverse(scale_modes(dst_forward(f), [](std::size_t, double mu) { return -mu * mu; }));
}

/// Derivative of the sine series at r = 0: sum_k mu_k c_k.
template <class T>
T derivative_at_origin(const SineSpectrum<T>& s) {
  T sum{};
  for (std::size_t m = 0; m < s.size(); ++m) sum += s.mu(m) * s[m];
  return sum;
}

/// Discrete L2 norm sqrt(h_r sum_{j=1}^{J-1} |f_j|^2).
template <class T>
double norm_h(const RadialField<T>& f) {
  double sum = 0.0;
  for (const auto& v : f.values()) sum += std::norm(v);
  return std::sqrt(f.grid().spacing() * sum);
}

/// (R/2) sum_k |c_k|^2, which equals norm_h(dst_inverse(s))^2 by Parseval.
template <class T>
double spectral_norm_sq(const SineSpectrum<T>& s) {
  double sum = 0.0;
  for (const auto& c : s.coeffs()) sum += std::norm(c);
  return 0.5 * s.grid().radius() * sum;
}

}  // namespace sps
