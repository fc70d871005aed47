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

#include "cvbell/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "cvbell/errors.hpp"

namespace cvbell {

QuadratureGrid::QuadratureGrid(double lo, double hi, double step) : lo_(lo), hi_(hi), step_(step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step)) {
    throw std::invalid_argument("QuadratureGrid: bounds and step must be finite");
  }
  if (!(step > 0)) throw std::invalid_argument("QuadratureGrid: step must be positive");
  if (!(lo < hi)) throw std::invalid_argument("QuadratureGrid: lo must be below hi");

  const double intervals = (hi - lo) / step;
  // Slack absorbs representation error in spans such as 16 / 0.01.
  const auto count = static_cast<std::size_t>(std::floor(intervals + 1e-9)) + 1;
  if (count < 2) throw std::invalid_argument("QuadratureGrid: fewer than two points");

  const bool spans_exactly = std::abs(intervals - std::round(intervals)) < 1e-9;
  symmetric_ = (lo == -hi) && spans_exactly;

  points_.resize(count);
  for (std::size_t k = 0; k < count; ++k) points_[k] = lo + static_cast<double>(k) * step;
  if (symmetric_) {
    for (std::size_t k = 0; k < count / 2; ++k) points_[count - 1 - k] = -points_[k];
    if (count % 2 == 1) points_[count / 2] = 0.0;
  }
}

QuadratureGrid QuadratureGrid::standard() { return QuadratureGrid(-8.0, 8.0, 0.01); }

std::vector<double> QuadratureGrid::trapezoid_weights() const {
  std::vector<double> w(points_.size(), step_);
  w.front() = step_ / 2;
  w.back() = step_ / 2;
  return w;
}

std::vector<double> hermite_wavefunction_row(int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("hermite_wavefunction_row: n_max must be >= 0");
  std::vector<double> row(static_cast<std::size_t>(n_max) + 1);
  // (2 pi)^(-1/4)
  const double norm0 = 1.0 / std::sqrt(std::sqrt(2.0 * std::numbers::pi));
  row[0] = norm0 * std::exp(-0.25 * x * x);
  if (n_max == 0) return row;
  row[1] = x * row[0];
  for (int n = 1; n < n_max; ++n) {
    row[n + 1] = (x * row[n] - std::sqrt(static_cast<double>(n)) * row[n - 1]) /
                 std::sqrt(static_cast<double>(n + 1));
  }
  return row;
}

double gaussian_cdf(double x) {
  if (std::isnan(x)) return x;
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double bessel_i0(double x) {
  if (x < 0) throw std::invalid_argument("bessel_i0: argument must be >= 0");
  const double quarter_x2 = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1;; ++k) {
    term *= quarter_x2 / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

std::vector<complex> coherent_amplitudes(complex amp, int n_max, double tail_tol) {
  if (n_max < 0) throw std::invalid_argument("coherent_amplitudes: n_max must be >= 0");
  std::vector<complex> c(static_cast<std::size_t>(n_max) + 1, complex(0.0, 0.0));
  const double modulus = std::abs(amp);
  if (modulus == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double log_mod = std::log(modulus);
  const double arg = std::arg(amp);
  // log |c_n| = -|a|^2/2 + n log|a| - log(n!)/2, accumulated term by term.
  double log_c = -0.5 * modulus * modulus;
  double retained = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) log_c += log_mod - 0.5 * std::log(static_cast<double>(n));
    const double m = std::exp(log_c);
    c[n] = std::polar(m, n * arg);
    retained += m * m;
  }
  if (retained < 1.0 - tail_tol) {
    throw TruncationError("coherent_amplitudes: |amp|^2 = " + std::to_string(modulus * modulus) +
                          " leaves tail mass " + std::to_string(1.0 - retained) +
                          " beyond n_max = " + std::to_string(n_max));
  }
  return c;
}

TruncatedUnitary::TruncatedUnitary(int n_max, double phase, std::vector<Eigen::MatrixXcd> blocks)
    : n_max_(n_max), phase_(phase), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != 2 * n_max_ + 1) {
    throw std::invalid_argument("TruncatedUnitary: expected 2*n_max+1 blocks");
  }
}

int TruncatedUnitary::first_min(int total) const { return std::max(0, total - n_max_); }
int TruncatedUnitary::first_max(int total) const { return std::min(total, n_max_); }

const Eigen::MatrixXcd& TruncatedUnitary::block(int total) const {
  if (total < 0 || total > max_total()) throw std::out_of_range("TruncatedUnitary::block");
  return blocks_[static_cast<std::size_t>(total)];
}

complex TruncatedUnitary::amplitude(int total, int out_plus, int in_plus) const {
  if (total < 0 || total > max_total()) return 0.0;
  const int lo = first_min(total);
  const int hi = first_max(total);
  if (out_plus < lo || out_plus > hi || in_plus < lo || in_plus > hi) return 0.0;
  return blocks_[static_cast<std::size_t>(total)](out_plus - lo, in_plus - lo);
}

double TruncatedUnitary::unitarity_defect() const {
  double worst = 0.0;
  for (int total = 0; total <= n_max_; ++total) {
    const auto& u = blocks_[static_cast<std::size_t>(total)];
    const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    // Spectral norm of the Hermitian defect = largest |eigenvalue|.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d, Eigen::EigenvaluesOnly);
    worst = std::max(worst, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

// Single-particle generator H with exp(iH) = T, T the 2x2 mode matrix
// (rows: outputs c_plus, c_minus; columns: inputs a_plus, a_minus).
Eigen::Matrix2cd single_particle_generator(double phase) {
  const complex e = std::polar(1.0, -phase);
  Eigen::Matrix2cd t;
  t << 1.0, e, 1.0, -e;
  t /= std::numbers::sqrt2;

  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(t);
  Eigen::Vector2cd v0 = es.eigenvectors().col(0).normalized();
  Eigen::Vector2cd v1 = es.eigenvectors().col(1);
  v1 -= v0 * v0.dot(v1);
  v1.normalize();
  return std::arg(es.eigenvalues()(0)) * v0 * v0.adjoint() +
         std::arg(es.eigenvalues()(1)) * v1 * v1.adjoint();
}

}  // namespace

Eigen::MatrixXcd beamsplitter_block(int total, double phase) {
  if (total < 0) throw std::invalid_argument("beamsplitter_block: total must be >= 0");
  const Eigen::Matrix2cd h = single_particle_generator(phase);
  const int dim = total + 1;
  // Basis index m = photons in the plus mode.
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
  for (int m = 0; m <= total; ++m) {
    g(m, m) = h(0, 0) * static_cast<double>(m) + h(1, 1) * static_cast<double>(total - m);
    if (m < total) {
      const double s = std::sqrt(static_cast<double>(m + 1) * (total - m));
      g(m + 1, m) = h(0, 1) * s;  // a_plus^dagger a_minus
      g(m, m + 1) = h(1, 0) * s;  // a_minus^dagger a_plus
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([](double x) { return std::polar(1.0, x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

TruncatedUnitary beamsplitter_unitary(int n_max, double phase) {
  if (n_max < 0) throw std::invalid_argument("beamsplitter_unitary: n_max must be >= 0");
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(static_cast<std::size_t>(2 * n_max + 1));
  for (int total = 0; total <= 2 * n_max; ++total) {
    const int lo = std::max(0, total - n_max);
    const int len = std::min(total, n_max) - lo + 1;
    const Eigen::MatrixXcd full = beamsplitter_block(total, phase);
    blocks.emplace_back(full.block(lo, lo, len, len));
  }
  return TruncatedUnitary(n_max, phase, std::move(blocks));
}

}  // namespace cvbell
