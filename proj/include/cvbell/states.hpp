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

// Two-mode states in Schmidt-diagonal Fock form sum_n c_n |n>|n>, and the
// Gaussian covariance form of the two-mode squeezed vacuum.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvbell/hilbert.hpp"

namespace cvbell {

struct SchmidtDiagonalState {
  std::string label;
  std::vector<complex> coeffs;  // c_0 .. c_{n_max}, normalized
  double tail_mass = 0.0;       // mass discarded before renormalization

  int n_max() const { return static_cast<int>(coeffs.size()) - 1; }
  double norm_squared() const;
};

/// Normalizes raw coefficients, recording the tail mass supplied by the caller.
SchmidtDiagonalState make_schmidt_state(std::string label, std::vector<complex> raw,
                                        double tail_mass);

/// c_n proportional to (r0^2)^n / n!, normalized by I0(2 r0^2)^(-1/2).
SchmidtDiagonalState pair_coherent(double r0, int n_max = kDefaultQuadratureNmax,
                                   double tail_tol = kDefaultTailTolerance);

/// c_n = sech(r) tanh(r)^n.
SchmidtDiagonalState two_mode_squeezed(double r, int n_max = kDefaultQuadratureNmax,
                                       double tail_tol = kDefaultTailTolerance);

/// |0>|0>, padded with zeros up to n_max.
SchmidtDiagonalState vacuum_state(int n_max = 0);

/// Covariance of (X_0^A, X_{pi/2}^A, X_0^B, X_{pi/2}^B); the mean is zero.
struct GaussianCovariance {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Identity();
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();

  double var(int k) const { return matrix(k, k); }
  double cov(int j, int k) const { return matrix(j, k); }

  /// Throws std::invalid_argument unless symmetric, every variance >= 1 and
  /// every per-mode product Var(X_0) Var(X_{pi/2}) >= 1.
  void validate(double tol = 1e-12) const;
};

namespace quad {
inline constexpr int kXA = 0;
inline constexpr int kPA = 1;
inline constexpr int kXB = 2;
inline constexpr int kPB = 3;
}  // namespace quad

/// Var = cosh 2r on every quadrature, Cov(X_0^A, X_0^B) = sinh 2r,
/// Cov(X_{pi/2}^A, X_{pi/2}^B) = -sinh 2r.
GaussianCovariance tmsv_covariance(double r);

struct CrosscheckReport {
  double r = 0.0;
  int n_max = 0;
  double var_xa_fock = 0.0, var_xa_cov = 0.0;
  double cov_xx_fock = 0.0, cov_xx_cov = 0.0;   // <X_0^A X_0^B>
  double cov_pp_fock = 0.0, cov_pp_cov = 0.0;   // <X_{pi/2}^A X_{pi/2}^B>
  double max_abs_diff = 0.0;
  bool agree = false;
};

/// Grid wide enough for the quadrature moments of the squeezed vacuum at r.
QuadratureGrid moment_grid(double r, double step = 0.01);

/// Quadrature moments of two_mode_squeezed(r, n_max) integrated on `grid`
/// against the entries of tmsv_covariance(r).  Propagates TruncationError.
CrosscheckReport fock_vs_covariance_crosscheck(double r, int n_max, const QuadratureGrid& grid,
                                               double tol = 1e-6);
CrosscheckReport fock_vs_covariance_crosscheck(double r, int n_max, double tol = 1e-6);

}  // namespace cvbell
