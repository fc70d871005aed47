// Copyright 2026 The cvbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference formulas used only by the tests.  None of them shares
// code with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace cvbell::testing {

/// Standard normal CDF from the Maclaurin series of erf; accurate for |x| <= 3.
inline double normal_cdf_series(double x) {
  const double z = x / std::numbers::sqrt2;
  double term = z, sum = z;
  for (int n = 1; n < 200; ++n) {
    term *= -z * z / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-18) break;
  }
  return 0.5 + sum * std::numbers::inv_sqrtpi;
}

/// Oscillator eigenfunction with variance-1 vacuum, from the physicists'
/// Hermite polynomial and an explicit normalization.
inline double oscillator_wavefunction(int n, double x) {
  const double log_norm =
      -0.25 * std::log(2 * std::numbers::pi) - 0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0));
  return std::exp(log_norm - x * x / 4) * std::hermite(static_cast<unsigned>(n), x / std::numbers::sqrt2);
}

/// P(K = k) for K the difference of two independent Poisson(mu) variables.
inline double skellam_symmetric(int k, double mu) {
  return std::exp(-2 * mu) * std::cyl_bessel_i(static_cast<double>(std::abs(k)), 2 * mu);
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

/// <m, N-m| U |k, N-k> for the beam splitter with a_+^dag = (c_+^dag + c_-^dag)/sqrt 2,
/// a_-^dag = e^{-i phase} (c_+^dag - c_-^dag)/sqrt 2, by binomial expansion.
inline std::complex<double> beamsplitter_amplitude(int total, int m, int k, double phase) {
  double coefficient = 0.0;
  for (int j = 0; j <= k; ++j) {
    const int rest = m - j;
    if (rest < 0 || rest > total - k) continue;
    const double sign = ((total - k - rest) % 2 == 0) ? 1.0 : -1.0;
    coefficient += binomial(k, j) * binomial(total - k, rest) * sign;
  }
  const double scale = std::exp(0.5 * (std::lgamma(m + 1.0) + std::lgamma(total - m + 1.0) -
                                       std::lgamma(k + 1.0) - std::lgamma(total - k + 1.0)) -
                                0.5 * total * std::log(2.0));
  return coefficient * scale * std::polar(1.0, -phase * (total - k));
}

/// P++ for the two-mode squeezed vacuum with sign binning at zero and
/// Gaussian noise sigma0 on each side: the orthant probability of a
/// bivariate normal with correlation rho.
inline double tmsv_p_plus_plus(double r, double angle_sum, double sigma0) {
  const double rho = std::sinh(2 * r) * std::cos(angle_sum) / (std::cosh(2 * r) + sigma0 * sigma0);
  return 0.25 + std::asin(rho) / (2 * std::numbers::pi);
}

/// Golden-section minimum of a unimodal function on [lo, hi].
inline double golden_minimum(const std::function<double(double)>& f, double lo, double hi,
                             double tol = 1e-12) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  while (b - a > tol) {
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return f(0.5 * (a + b));
}

/// Fixed-seed generator for property tests.
inline std::mt19937_64 property_rng(std::uint64_t salt = 0) { return std::mt19937_64(20260611ULL + salt); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace cvbell::testing
