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

// Special functions and truncated-Fock-space primitives.
//
// Quadrature convention: X_theta = a exp(-i theta) + a^dagger exp(i theta), so
// the vacuum has <X^2> = 1 and the Fock wavefunctions are
//   phi_n(x) = (2 pi)^(-1/4) (2^n n!)^(-1/2) H_n(x / sqrt 2) exp(-x^2 / 4).

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace cvbell {

using complex = std::complex<double>;

inline constexpr int kDefaultQuadratureNmax = 60;
inline constexpr double kDefaultTailTolerance = 1e-9;

/// Uniform 1-D grid lo, lo + step, ... used for trapezoidal integration over
/// quadrature outcomes.  When lo == -hi and the step divides the span, the
/// points are mirrored exactly so that x[k] == -x[n-1-k] bit for bit.
class QuadratureGrid {
 public:
  QuadratureGrid(double lo, double hi, double step);

  /// [-8, 8] with step 0.01.
  static QuadratureGrid standard();

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double step() const { return step_; }
  std::size_t size() const { return points_.size(); }
  bool symmetric() const { return symmetric_; }
  const std::vector<double>& points() const { return points_; }

  /// Trapezoid weights: step everywhere, step/2 at both ends.
  std::vector<double> trapezoid_weights() const;

  /// Same span with the step halved.
  QuadratureGrid refined() const { return QuadratureGrid(lo_, hi_, step_ / 2); }

 private:
  double lo_;
  double hi_;
  double step_;
  bool symmetric_ = false;
  std::vector<double> points_;
};

/// phi_0(x) ... phi_{n_max}(x) by the normalized three-term recurrence
///   phi_{n+1} = (x phi_n - sqrt(n) phi_{n-1}) / sqrt(n+1).
std::vector<double> hermite_wavefunction_row(int n_max, double x);

/// Standard normal CDF.
double gaussian_cdf(double x);

/// Modified Bessel function I_0 by its power series.
double bessel_i0(double x);

/// Fock amplitudes exp(-|a|^2/2) a^n / sqrt(n!) for n = 0..n_max.
/// Throws TruncationError when the retained mass is below 1 - tail_tol.
std::vector<complex> coherent_amplitudes(complex amp, int n_max,
                                         double tail_tol = kDefaultTailTolerance);

/// Two-mode passive unitary stored block by block in total photon number N.
///
/// Block N is indexed by the photon number in the first mode: row m is the
/// output |m, N-m>, column k the input |k, N-k>, both restricted to
/// first_min(N) <= m, k <= first_max(N) so that neither mode exceeds n_max.
/// Blocks with N <= n_max are complete and therefore unitary.
class TruncatedUnitary {
 public:
  TruncatedUnitary(int n_max, double phase, std::vector<Eigen::MatrixXcd> blocks);

  int n_max() const { return n_max_; }
  double phase() const { return phase_; }
  int max_total() const { return 2 * n_max_; }
  bool complete(int total) const { return total <= n_max_; }
  int first_min(int total) const;
  int first_max(int total) const;

  const Eigen::MatrixXcd& block(int total) const;

  /// <out_plus, N - out_plus| U |in_plus, N - in_plus>; zero outside the truncation.
  complex amplitude(int total, int out_plus, int in_plus) const;

  /// max over complete blocks of the operator-norm defect of U^dagger U - I.
  double unitarity_defect() const;

 private:
  int n_max_;
  double phase_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

/// The full (N+1)x(N+1) block of the beam splitter with output modes
///   c_plus  = (a_plus + a_minus exp(-i phase)) / sqrt 2
///   c_minus = (a_plus - a_minus exp(-i phase)) / sqrt 2,
/// obtained by exponentiating the block of the number-conserving generator.
/// In this convention |1,0> -> (|1,0> + |0,1>)/sqrt 2 and
/// |0,1> -> exp(-i phase) (|1,0> - |0,1>)/sqrt 2.
Eigen::MatrixXcd beamsplitter_block(int total, double phase);

TruncatedUnitary beamsplitter_unitary(int n_max, double phase);

}  // namespace cvbell
