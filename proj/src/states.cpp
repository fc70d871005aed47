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

#include "cvbell/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cvbell/errors.hpp"
#include "cvbell/kernels.hpp"

namespace cvbell {

double SchmidtDiagonalState::norm_squared() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return s;
}

SchmidtDiagonalState make_schmidt_state(std::string label, std::vector<complex> raw,
                                        double tail_mass) {
  if (raw.empty()) throw std::invalid_argument("make_schmidt_state: no coefficients");
  double s = 0.0;
  for (const auto& c : raw) s += std::norm(c);
  if (!(s > 0)) throw std::invalid_argument("make_schmidt_state: zero vector");
  const double scale = 1.0 / std::sqrt(s);
  for (auto& c : raw) c *= scale;
  return SchmidtDiagonalState{std::move(label), std::move(raw), tail_mass};
}

SchmidtDiagonalState pair_coherent(double r0, int n_max, double tail_tol) {
  if (!(r0 > 0)) throw std::invalid_argument("pair_coherent: r0 must be positive");
  if (n_max < 0) throw std::invalid_argument("pair_coherent: n_max must be >= 0");
  const double lambda = r0 * r0;
  const double total = bessel_i0(2.0 * lambda);  // sum_n (lambda^n / n!)^2
  std::vector<complex> raw(static_cast<std::size_t>(n_max) + 1);
  double term = 1.0;
  double retained = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) term *= lambda / n;
    raw[n] = term;
    retained += term * term;
  }
  const double tail = std::max(0.0, 1.0 - retained / total);
  if (tail > tail_tol) {
    throw TruncationError("pair_coherent: r0 = " + std::to_string(r0) + " leaves tail mass " +
                          std::to_string(tail) + " beyond n_max = " + std::to_string(n_max));
  }
  return make_schmidt_state("pair-coherent(r0=" + std::to_string(r0) + ")", std::move(raw), tail);
}

SchmidtDiagonalState two_mode_squeezed(double r, int n_max, double tail_tol) {
  if (!(r >= 0)) throw std::invalid_argument("two_mode_squeezed: r must be >= 0");
  if (n_max < 0) throw std::invalid_argument("two_mode_squeezed: n_max must be >= 0");
  const double t = std::tanh(r);
  const double tail = std::pow(t, 2.0 * (n_max + 1));
  if (tail > tail_tol) {
    throw TruncationError("two_mode_squeezed: r = " + std::to_string(r) + " leaves tail mass " +
                          std::to_string(tail) + " beyond n_max = " + std::to_string(n_max));
  }
  std::vector<complex> raw(static_cast<std::size_t>(n_max) + 1);
  double c = 1.0 / std::cosh(r);
  for (int n = 0; n <= n_max; ++n) {
    raw[n] = c;
    c *= t;
  }
  return make_schmidt_state("two-mode-squeezed(r=" + std::to_string(r) + ")", std::move(raw),
                            tail);
}

SchmidtDiagonalState vacuum_state(int n_max) {
  if (n_max < 0) throw std::invalid_argument("vacuum_state: n_max must be >= 0");
  std::vector<complex> c(static_cast<std::size_t>(n_max) + 1, complex(0.0, 0.0));
  c[0] = 1.0;
  return SchmidtDiagonalState{"vacuum", std::move(c), 0.0};
}

void GaussianCovariance::validate(double tol) const {
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("GaussianCovariance: matrix is not symmetric");
  }
  if (matrix.diagonal().minCoeff() < 1.0 - tol) {
    throw std::invalid_argument("GaussianCovariance: variance below the vacuum level");
  }
  for (int mode = 0; mode < 2; ++mode) {
    const double vx = matrix(2 * mode, 2 * mode);
    const double vp = matrix(2 * mode + 1, 2 * mode + 1);
    if (vx * vp < 1.0 - tol) {
      throw std::invalid_argument("GaussianCovariance: uncertainty product below 1 in mode " +
                                  std::to_string(mode));
    }
  }
}

GaussianCovariance tmsv_covariance(double r) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  GaussianCovariance g;
  g.matrix = Eigen::Matrix4d::Identity() * c;
  g.matrix(quad::kXA, quad::kXB) = g.matrix(quad::kXB, quad::kXA) = s;
  g.matrix(quad::kPA, quad::kPB) = g.matrix(quad::kPB, quad::kPA) = -s;
  return g;
}

QuadratureGrid moment_grid(double r, double step) {
  // Ten standard deviations of the reduced quadrature, never narrower than [-12, 12].
  const double half = std::max(12.0, std::ceil(10.0 * std::sqrt(std::cosh(2.0 * r))));
  return QuadratureGrid(-half, half, step);
}

CrosscheckReport fock_vs_covariance_crosscheck(double r, int n_max, const QuadratureGrid& grid,
                                               double tol) {
  const auto state = two_mode_squeezed(r, n_max);
  const auto table = kernels::omp::hermite_table(grid.points(), state.n_max());
  const auto w = grid.trapezoid_weights();

  std::vector<double> wx(w.size()), wxx(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double x = grid.points()[k];
    wx[k] = w[k] * x;
    wxx[k] = w[k] * x * x;
  }
  const Eigen::MatrixXd g1 = kernels::omp::weighted_gram(table, wx);
  const Eigen::MatrixXd g2 = kernels::omp::weighted_gram(table, wxx);

  // Integrating x_a x_b against |sum_n c_n e^{-in psi} phi_n(x_a) phi_n(x_b)|^2
  // factorizes into sum_{n,n'} c_n c_n' cos((n - n') psi) G1(n,n')^2.
  auto product_moment = [&](double psi) {
    double acc = 0.0;
    for (int n = 0; n <= state.n_max(); ++n) {
      for (int m = 0; m <= state.n_max(); ++m) {
        acc += std::real(state.coeffs[n] * std::conj(state.coeffs[m]) *
                         std::polar(1.0, -(n - m) * psi)) *
               g1(n, m) * g1(n, m);
      }
    }
    return acc;
  };
  double second = 0.0;
  for (int n = 0; n <= state.n_max(); ++n) second += std::norm(state.coeffs[n]) * g2(n, n);

  const auto cov = tmsv_covariance(r);
  CrosscheckReport rep;
  rep.r = r;
  rep.n_max = n_max;
  rep.var_xa_fock = second;
  rep.var_xa_cov = cov.var(quad::kXA);
  rep.cov_xx_fock = product_moment(0.0);
  rep.cov_xx_cov = cov.cov(quad::kXA, quad::kXB);
  // X_{pi/2} on both sides: angle sum pi.
  rep.cov_pp_fock = product_moment(std::numbers::pi);
  rep.cov_pp_cov = cov.cov(quad::kPA, quad::kPB);
  rep.max_abs_diff = std::max({std::abs(rep.var_xa_fock - rep.var_xa_cov),
                               std::abs(rep.cov_xx_fock - rep.cov_xx_cov),
                               std::abs(rep.cov_pp_fock - rep.cov_pp_cov)});
  rep.agree = rep.max_abs_diff <= tol;
  return rep;
}

CrosscheckReport fock_vs_covariance_crosscheck(double r, int n_max, double tol) {
  return fock_vs_covariance_crosscheck(r, n_max, moment_grid(r), tol);
}

}  // namespace cvbell
