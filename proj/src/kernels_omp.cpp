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
#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "cvbell/kernels.hpp"

namespace cvbell::kernels {

std::vector<double> split_coherent_amplitudes(double alpha, int n_out) {
  std::vector<double> coh(static_cast<std::size_t>(n_out) + 1, 0.0);
  if (alpha == 0.0) {
    coh[0] = 1.0;
    return coh;
  }
  const double log_amp = std::log(std::abs(alpha) / std::sqrt(2.0));
  const double sign = alpha < 0 ? -1.0 : 1.0;
  double log_c = -0.25 * alpha * alpha;
  double s = 1.0;
  for (int p = 0; p <= n_out; ++p) {
    if (p > 0) {
      log_c += log_amp - 0.5 * std::log(static_cast<double>(p));
      s *= sign;
    }
    coh[p] = s * std::exp(log_c);
  }
  return coh;
}

void difference_amplitudes(double alpha, int p, int q, double coh_p, double coh_q,
                           std::span<double> out) {
  // f_n = sqrt(n!) alpha^-n [t^n] (1+t)^p (1-t)^q obeys
  //   f_{n+1} = ((p-q)/alpha f_n - (p+q-n+1)/alpha^2 sqrt(n) f_{n-1}) / sqrt(n+1),
  // which reduces to the Hermite recurrence when p + q ~ alpha^2.
  const double envelope = coh_p * coh_q;
  const double diff = static_cast<double>(p - q) / alpha;
  const double sum = static_cast<double>(p + q);
  const double inv_a2 = 1.0 / (alpha * alpha);
  double prev = 0.0;
  double cur = 1.0;
  out[0] = envelope;
  for (std::size_t n = 0; n + 1 < out.size(); ++n) {
    const double nd = static_cast<double>(n);
    const double next =
        (diff * cur - (sum - nd + 1.0) * inv_a2 * std::sqrt(nd) * prev) / std::sqrt(nd + 1.0);
    prev = cur;
    cur = next;
    out[n + 1] = envelope * cur;
  }
}

namespace omp {

HermiteTable hermite_table(std::span<const double> x, int n_max) {
  HermiteTable t;
  t.n_max = n_max;
  t.columns = x.size();
  t.values.assign(static_cast<std::size_t>(n_max + 1) * x.size(), 0.0);
  const auto cols = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < cols; ++k) {
    const auto row = hermite_wavefunction_row(n_max, x[static_cast<std::size_t>(k)]);
    for (int n = 0; n <= n_max; ++n) {
      t.values[static_cast<std::size_t>(n) * t.columns + static_cast<std::size_t>(k)] = row[n];
    }
  }
  return t;
}

Eigen::MatrixXd weighted_gram(const HermiteTable& table, std::span<const double> weights) {
  if (weights.size() != table.columns) throw std::invalid_argument("weighted_gram: size mismatch");
  const int dim = table.n_max + 1;
  Eigen::MatrixXd w(dim, dim);
#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n < dim; ++n) {
    const auto rn = table.row(n);
    for (int m = n; m < dim; ++m) {
      const auto rm = table.row(m);
      double acc = 0.0;
      for (std::size_t k = 0; k < table.columns; ++k) acc += weights[k] * rn[k] * rm[k];
      w(n, m) = acc;
      w(m, n) = acc;
    }
  }
  return w;
}

Eigen::MatrixXd joint_density(const HermiteTable& table, std::span<const complex> coeffs,
                              double angle_sum) {
  const int terms = std::min<int>(table.n_max + 1, static_cast<int>(coeffs.size()));
  std::vector<complex> rotated(static_cast<std::size_t>(terms));
  for (int n = 0; n < terms; ++n) rotated[n] = coeffs[n] * std::polar(1.0, -n * angle_sum);

  const auto k_count = static_cast<std::ptrdiff_t>(table.columns);
  Eigen::MatrixXd density(k_count, k_count);
#pragma omp parallel
  {
    std::vector<complex> u(static_cast<std::size_t>(terms));
#pragma omp for schedule(static)
    for (std::ptrdiff_t a = 0; a < k_count; ++a) {
      for (int n = 0; n < terms; ++n) u[n] = rotated[n] * table(n, static_cast<std::size_t>(a));
      for (std::ptrdiff_t b = 0; b < k_count; ++b) {
        complex amp = 0.0;
        for (int n = 0; n < terms; ++n) amp += u[n] * table(n, static_cast<std::size_t>(b));
        density(a, b) = std::norm(amp);
      }
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

#pragma omp parallel
  {
    std::vector<double> amp(static_cast<std::size_t>(n_signal) + 1);
    Eigen::Map<Eigen::VectorXd> a(amp.data(), n_signal + 1);
    // Each difference i = p - q is owned by one thread; q runs in a fixed order.
#pragma omp for schedule(dynamic, 8)
    for (int i = -n_out; i <= n_out; ++i) {
      Eigen::MatrixXd& m = kernel.blocks[static_cast<std::size_t>(i + n_out)];
      const int q_lo = std::max(0, -i);
      const int q_hi = std::min(n_out, n_out - i);
      for (int q = q_lo; q <= q_hi; ++q) {
        const int p = q + i;
        difference_amplitudes(alpha, p, q, coh[p], coh[q], amp);
        m.selfadjointView<Eigen::Lower>().rankUpdate(a);
      }
      m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
    }
  }
  return kernel;
}

}  // namespace omp
}  // namespace cvbell::kernels
