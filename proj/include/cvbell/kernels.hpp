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

// Data-parallel inner loops shared by the quadrature and Fock engines.
//
// Every kernel exists twice with identical signatures: `omp::` is the
// OpenMP-parallel production version, `serial::` is a straightforward
// single-threaded reference kept for testing and benchmarking.  The OpenMP
// versions assign each output element to exactly one thread and never reduce
// across threads, so their results do not depend on the thread count.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cvbell/hilbert.hpp"

namespace cvbell::kernels {

/// phi_n(x_k) stored row-major: row n, column k.
struct HermiteTable {
  int n_max = 0;
  std::size_t columns = 0;
  std::vector<double> values;

  std::span<const double> row(int n) const {
    return {values.data() + static_cast<std::size_t>(n) * columns, columns};
  }
  double operator()(int n, std::size_t k) const {
    return values[static_cast<std::size_t>(n) * columns + k];
  }
};

/// Photon-difference kernel of the balanced detector at phase 0.
///
/// For an input |alpha> (x) |n> on (a_plus, a_minus), at(i)(n, n') is
///   sum over p - q = i of A(p, q; n) A(p, q; n'),
/// with p, q <= n_out the photon numbers of the two outputs.  The amplitudes are
/// real at phase 0.
struct DifferenceKernel {
  double alpha = 0.0;
  int n_signal = 0;
  int n_out = 0;
  std::vector<Eigen::MatrixXd> blocks;  // index i + n_out

  const Eigen::MatrixXd& at(int i) const { return blocks[static_cast<std::size_t>(i + n_out)]; }
};

/// Output-mode amplitude A(p, q; n) for n = 0..n_signal, written into `out`.
/// coh_p, coh_q are the Fock amplitudes of |alpha / sqrt 2> at p and q.
void difference_amplitudes(double alpha, int p, int q, double coh_p, double coh_q,
                           std::span<double> out);

/// Fock amplitudes of the real coherent state |alpha / sqrt 2>, n = 0..n_out.
std::vector<double> split_coherent_amplitudes(double alpha, int n_out);

namespace omp {

HermiteTable hermite_table(std::span<const double> x, int n_max);

/// W(n, n') = sum_k weights[k] phi_n(x_k) phi_n'(x_k).
Eigen::MatrixXd weighted_gram(const HermiteTable& table, std::span<const double> weights);

/// |sum_n c_n exp(-i n angle_sum) phi_n(x_a) phi_n(x_b)|^2 on the grid.
Eigen::MatrixXd joint_density(const HermiteTable& table, std::span<const complex> coeffs,
                              double angle_sum);

DifferenceKernel difference_kernel(double alpha, int n_signal, int n_out);

}  // namespace omp

namespace serial {

HermiteTable hermite_table(std::span<const double> x, int n_max);
Eigen::MatrixXd weighted_gram(const HermiteTable& table, std::span<const double> weights);
Eigen::MatrixXd joint_density(const HermiteTable& table, std::span<const complex> coeffs,
                              double angle_sum);
DifferenceKernel difference_kernel(double alpha, int n_signal, int n_out);

/// sum_{a,b} wa[a] wb[b] density(a, b) in plain nested loops.
double integrate_density(const Eigen::MatrixXd& density, std::span<const double> wa,
                         std::span<const double> wb);

}  // namespace serial

}  // namespace cvbell::kernels
