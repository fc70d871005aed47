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

#include <algorithm>
#include <stdexcept>

#include "cvbell/kernels.hpp"

namespace cvbell::kernels::serial {

HermiteTable hermite_table(std::span<const double> x, int n_max) {
  HermiteTable t;
  t.n_max = n_max;
  t.columns = x.size();
  t.values.assign(static_cast<std::size_t>(n_max + 1) * x.size(), 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto row = hermite_wavefunction_row(n_max, x[k]);
    for (int n = 0; n <= n_max; ++n) t.values[static_cast<std::size_t>(n) * t.columns + k] = row[n];
  }
  return t;
}

Eigen::MatrixXd weighted_gram(const HermiteTable& table, std::span<const double> weights) {
  if (weights.size() != table.columns) throw std::invalid_argument("weighted_gram: size mismatch");
  const int dim = table.n_max + 1;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t k = 0; k < table.columns; ++k) {
    for (int n = 0; n < dim; ++n) {
      const double wn = weights[k] * table(n, k);
      for (int m = 0; m < dim; ++m) w(n, m) += wn * table(m, k);
    }
  }
  return w;
}

Eigen::MatrixXd joint_density(const HermiteTable& table, std::span<const complex> coeffs,
                              double angle_sum) {
  const int terms = std::min<int>(table.n_max + 1, static_cast<int>(coeffs.size()));
  std::vector<complex> rotated(static_cast<std::size_t>(terms));
  for (int n = 0; n < terms; ++n) rotated[n] = coeffs[n] * std::polar(1.0, -n * angle_sum);
  const auto k_count = static_cast<Eigen::Index>(table.columns);
  Eigen::MatrixXd density(k_count, k_count);
  for (Eigen::Index a = 0; a < k_count; ++a) {
    for (Eigen::Index b = 0; b < k_count; ++b) {
      complex amp = 0.0;
      for (int n = 0; n < terms; ++n) {
        amp += rotated[n] * table(n, static_cast<std::size_t>(a)) *
               table(n, static_cast<std::size_t>(b));
      }
      density(a, b) = std::norm(amp);
    }
  }
  return density;
}

DifferenceKernel difference_kernel(double alpha, int n_signal, int n_out) {
  if (!(alpha > 0)) throw std::invalid_argument("difference_kernel: alpha must be positive");
  DifferenceKernel kernel;
  kernel.alpha = alpha;
  kernel.n_signal = n_signal;
  kernel.n_out = n_out;
  kernel.blocks.assign(static_cast<std::size_t>(2 * n_out + 1),
                       Eigen::MatrixXd::Zero(n_signal + 1, n_signal + 1));
  const auto coh = split_coherent_amplitudes(alpha, n_out);
  std::vector<double> amp(static_cast<std::size_t>(n_signal) + 1);
  for (int p = 0; p <= n_out; ++p) {
    for (int q = 0; q <= n_out; ++q) {
      difference_amplitudes(alpha, p, q, coh[p], coh[q], amp);
      Eigen::MatrixXd& m = kernel.blocks[static_cast<std::size_t>(p - q + n_out)];
      for (int n = 0; n <= n_signal; ++n) {
        for (int np = 0; np <= n_signal; ++np) m(n, np) += amp[n] * amp[np];
      }
    }
  }
  return kernel;
}

double integrate_density(const Eigen::MatrixXd& density, std::span<const double> wa,
                         std::span<const double> wb) {
  double acc = 0.0;
  for (Eigen::Index a = 0; a < density.rows(); ++a) {
    double row = 0.0;
    for (Eigen::Index b = 0; b < density.cols(); ++b) row += density(a, b) * wb[b];
    acc += wa[a] * row;
  }
  return acc;
}

}  // namespace cvbell::kernels::serial
