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

#include "cvbell/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cvbell/errors.hpp"

namespace cvbell {

namespace {

constexpr double kSupportFloor = 1e-30;
constexpr double kNegativeTolerance = 1e-10;

Eigen::MatrixXcd phase_matrix(int n_signal, double theta) {
  Eigen::MatrixXcd ph(n_signal + 1, n_signal + 1);
  for (int n = 0; n <= n_signal; ++n) {
    for (int m = 0; m <= n_signal; ++m) ph(n, m) = std::polar(1.0, -(n - m) * theta);
  }
  return ph;
}

// The state's coefficients cut (or zero-padded) to the kernel's signal space.
std::vector<complex> signal_coefficients(const SchmidtDiagonalState& state, int n_signal,
                                         double tail_tol) {
  std::vector<complex> c(static_cast<std::size_t>(n_signal) + 1, complex(0.0, 0.0));
  double kept = 0.0;
  double dropped = 0.0;
  for (int n = 0; n <= state.n_max(); ++n) {
    if (n <= n_signal) {
      c[n] = state.coeffs[n];
      kept += std::norm(state.coeffs[n]);
    } else {
      dropped += std::norm(state.coeffs[n]);
    }
  }
  if (dropped > tail_tol) {
    throw TruncationError("signal truncation n_max_signal = " + std::to_string(n_signal) +
                          " drops mass " + std::to_string(dropped) + " of " + state.label);
  }
  if (dropped > 0) {
    const double scale = 1.0 / std::sqrt(kept);
    for (auto& v : c) v *= scale;
  }
  return c;
}

}  // namespace

int Truncations::default_lo(double alpha, double tail_tol) {
  const double a = std::abs(alpha);
  const double mu = a * a;
  // Poisson(mu) mass above n, summed term by term from n + 1.
  auto tail = [mu](int n) {
    if (mu == 0.0) return 0.0;
    double sum = 0.0;
    for (int k = n + 1;; ++k) {
      const double term = std::exp(-mu + k * std::log(mu) - std::lgamma(k + 1.0));
      sum += term;
      if (k > mu && term < 1e-3 * sum * std::numeric_limits<double>::epsilon()) break;
      if (k > mu && term == 0.0) break;
    }
    return sum;
  };
  int n = static_cast<int>(std::ceil(mu + 8.0 * a));
  while (tail(n) >= tail_tol) ++n;
  return n;
}

MeasurementKernel::MeasurementKernel(double theta, kernels::DifferenceKernel base, int n_lo)
    : theta_(theta), base_(std::move(base)), n_lo_(n_lo) {
  i_min_ = base_.n_out;
  i_max_ = -base_.n_out;
  for (int i = -base_.n_out; i <= base_.n_out; ++i) {
    if (base_.at(i).diagonal().maxCoeff() > kSupportFloor) {
      i_min_ = std::min(i_min_, i);
      i_max_ = std::max(i_max_, i);
    }
  }
  if (i_min_ > i_max_) throw ConsistencyError("MeasurementKernel: empty outcome support");
}

Eigen::MatrixXcd MeasurementKernel::matrix(int i) const {
  return base(i).cast<complex>().cwiseProduct(phase_matrix(n_signal(), theta_));
}

complex MeasurementKernel::element(int i, int n, int np) const {
  if (i < -base_.n_out || i > base_.n_out) return 0.0;
  return base(i)(n, np) * std::polar(1.0, -(n - np) * theta_);
}

MeasurementKernel MeasurementKernel::rotated(double theta) const {
  MeasurementKernel k = *this;
  k.theta_ = theta;
  return k;
}

double MeasurementKernel::completeness_defect(int n_upto) const {
  const int last = n_upto < 0 ? n_signal() : std::min(n_upto, n_signal());
  double worst = 0.0;
  for (int n = 0; n <= last; ++n) {
    double s = 0.0;
    for (int i = -base_.n_out; i <= base_.n_out; ++i) s += base(i)(n, n);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

double MeasurementKernel::hermiticity_defect() const {
  double worst = 0.0;
  for (int i = i_min_; i <= i_max_; ++i) {
    const Eigen::MatrixXcd m = matrix(i);
    worst = std::max(worst, (m - m.adjoint()).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<double> MeasurementKernel::diagonal_law(int n) const {
  std::vector<double> law;
  law.reserve(static_cast<std::size_t>(i_max_ - i_min_ + 1));
  for (int i = i_min_; i <= i_max_; ++i) law.push_back(base(i)(n, n));
  return law;
}

MeasurementKernel measurement_kernel(double alpha, double theta, int n_max_signal, int n_max_lo,
                                     double tail_tol) {
  if (!(alpha > 0)) throw std::invalid_argument("measurement_kernel: alpha must be positive");
  if (n_max_signal < 0 || n_max_lo < 0) {
    throw std::invalid_argument("measurement_kernel: truncations must be >= 0");
  }
  coherent_amplitudes(alpha, n_max_lo, tail_tol);  // tail guard only
  return MeasurementKernel(theta,
                           kernels::omp::difference_kernel(alpha, n_max_signal,
                                                           n_max_lo + n_max_signal),
                           n_max_lo);
}

MeasurementKernel measurement_kernel(double alpha, double theta, int n_max_signal) {
  return measurement_kernel(alpha, theta, n_max_signal, Truncations::default_lo(alpha));
}

KernelTable measurement_kernel_reference(double alpha, double theta, int n_max_signal,
                                         int n_max_lo) {
  const int cutoff = n_max_lo + n_max_signal;
  const auto lo = coherent_amplitudes(alpha, n_max_lo);
  const TruncatedUnitary u = beamsplitter_unitary(cutoff, theta);

  KernelTable table;
  table.i_min = -cutoff;
  table.blocks.assign(static_cast<std::size_t>(2 * cutoff + 1),
                      Eigen::MatrixXcd::Zero(n_max_signal + 1, n_max_signal + 1));
  Eigen::VectorXcd amp(n_max_signal + 1);
  for (int total = 0; total <= cutoff; ++total) {
    for (int p = 0; p <= total; ++p) {
      // Output |p, total - p>; input |total - n, n> contributes for each signal n.
      for (int n = 0; n <= n_max_signal; ++n) {
        const int k = total - n;
        amp(n) = (k >= 0 && k <= n_max_lo) ? lo[k] * u.amplitude(total, p, k) : complex(0.0);
      }
      // M_i(n, n') = sum A(n) conj(A(n')) = <n'| Pi_i |n>.
      table.blocks[static_cast<std::size_t>(2 * p - total + cutoff)] += amp * amp.adjoint();
    }
  }
  return table;
}

JointDifferenceDistribution::JointDifferenceDistribution(int i_min, int i_max, int j_min,
                                                         int j_max, std::vector<double> p)
    : i_min_(i_min), i_max_(i_max), j_min_(j_min), j_max_(j_max), p_(std::move(p)) {
  const auto expected = static_cast<std::size_t>(i_max - i_min + 1) *
                        static_cast<std::size_t>(j_max - j_min + 1);
  if (p_.size() != expected) throw std::invalid_argument("JointDifferenceDistribution: bad size");
}

double JointDifferenceDistribution::operator()(int i, int j) const {
  if (i < i_min_ || i > i_max_ || j < j_min_ || j > j_max_) return 0.0;
  return p_[static_cast<std::size_t>(i - i_min_) * static_cast<std::size_t>(j_max_ - j_min_ + 1) +
            static_cast<std::size_t>(j - j_min_)];
}

double JointDifferenceDistribution::total() const {
  double s = 0.0;
  for (double v : p_) s += v;
  return s;
}

std::vector<double> JointDifferenceDistribution::marginal_a() const {
  const auto cols = static_cast<std::size_t>(j_max_ - j_min_ + 1);
  std::vector<double> m(static_cast<std::size_t>(i_max_ - i_min_ + 1), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r] += p_[r * cols + c];
  }
  return m;
}

std::vector<double> JointDifferenceDistribution::marginal_b() const {
  const auto cols = static_cast<std::size_t>(j_max_ - j_min_ + 1);
  const auto rows = static_cast<std::size_t>(i_max_ - i_min_ + 1);
  std::vector<double> m(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[c] += p_[r * cols + c];
  }
  return m;
}

JointDifferenceDistribution joint_difference_distribution(const SchmidtDiagonalState& state,
                                                          const MeasurementKernel& a,
                                                          const MeasurementKernel& b,
                                                          double tail_tol) {
  if (a.n_signal() != b.n_signal()) {
    throw std::invalid_argument("joint_difference_distribution: kernels disagree on n_signal");
  }
  const int dim = a.n_signal() + 1;
  const auto c = signal_coefficients(state, a.n_signal(), tail_tol);
  const int rows = a.i_max() - a.i_min() + 1;
  const int cols = b.i_max() - b.i_min() + 1;

  // P(i, j) = sum_{n,n'} X_i(n,n') M^B_j(n,n') with X_i = (c c^dagger) o M^A_i,
  // evaluated as one product of flattened matrices.
  Eigen::MatrixXcd cc(dim, dim);
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) cc(n, m) = c[n] * std::conj(c[m]);
  }
  const Eigen::MatrixXcd pa = cc.cwiseProduct(phase_matrix(a.n_signal(), a.theta()));
  const Eigen::MatrixXcd pb = phase_matrix(b.n_signal(), b.theta());
  Eigen::MatrixXcd xa(rows, dim * dim);
  Eigen::MatrixXcd mb(dim * dim, cols);
  for (int r = 0; r < rows; ++r) {
    const Eigen::MatrixXcd x = pa.cwiseProduct(a.base(a.i_min() + r).cast<complex>());
    xa.row(r) = Eigen::Map<const Eigen::RowVectorXcd>(x.data(), dim * dim);
  }
  for (int col = 0; col < cols; ++col) {
    const Eigen::MatrixXcd y = pb.cwiseProduct(b.base(b.i_min() + col).cast<complex>());
    mb.col(col) = Eigen::Map<const Eigen::VectorXcd>(y.data(), dim * dim);
  }
  const Eigen::MatrixXcd prod = xa * mb;

  std::vector<double> p(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (int r = 0; r < rows; ++r) {
    for (int col = 0; col < cols; ++col) {
      double v = prod(r, col).real();
      if (v < 0) {
        if (v < -kNegativeTolerance) {
          throw NegativeProbability("P(" + std::to_string(a.i_min() + r) + ", " +
                                    std::to_string(b.i_min() + col) +
                                    ") = " + std::to_string(v));
        }
        v = 0.0;
      }
      p[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
        static_cast<std::size_t>(col)] = v;
    }
  }
  return JointDifferenceDistribution(a.i_min(), a.i_max(), b.i_min(), b.i_max(), std::move(p));
}

JointDifferenceDistribution joint_difference_distribution(const SchmidtDiagonalState& state,
                                                          double alpha, double beta, double theta,
                                                          double phi,
                                                          const Truncations& truncations) {
  const auto ka = measurement_kernel(alpha, theta, truncations.n_max_signal,
                                     truncations.lo_a(alpha), truncations.tail_tol);
  const auto kb = measurement_kernel(beta, phi, truncations.n_max_signal, truncations.lo_b(beta),
                                     truncations.tail_tol);
  return joint_difference_distribution(state, ka, kb, truncations.tail_tol);
}

namespace {

double plus_probability(int i, double sigma) {
  if (sigma > 0) return gaussian_cdf(static_cast<double>(i) / sigma);  // P(noise >= -i)
  return i >= 0 ? 1.0 : 0.0;
}

}  // namespace

BinnedProbabilities noisy_binned_probabilities(const JointDifferenceDistribution& dist,
                                               double sigma_a, std::optional<double> sigma_b) {
  if (!(sigma_a >= 0) || (sigma_b && !(*sigma_b >= 0))) {
    throw std::invalid_argument("noisy_binned_probabilities: sigma must be >= 0");
  }
  const double sb = sigma_b.value_or(sigma_a);
  std::vector<double> wa, wb;
  for (int i = dist.i_min(); i <= dist.i_max(); ++i) wa.push_back(plus_probability(i, sigma_a));
  for (int j = dist.j_min(); j <= dist.j_max(); ++j) wb.push_back(plus_probability(j, sb));

  BinnedProbabilities out;
  for (int i = dist.i_min(); i <= dist.i_max(); ++i) {
    double row = 0.0;
    double row_mass = 0.0;
    for (int j = dist.j_min(); j <= dist.j_max(); ++j) {
      const double p = dist(i, j);
      row += p * wb[static_cast<std::size_t>(j - dist.j_min())];
      row_mass += p;
    }
    const double w = wa[static_cast<std::size_t>(i - dist.i_min())];
    out.p_plus_plus += w * row;
    out.p_plus_a += w * row_mass;
  }
  const auto mb = dist.marginal_b();
  for (std::size_t k = 0; k < mb.size(); ++k) out.p_plus_b += wb[k] * mb[k];
  return out;
}

BellResult ch_statistic_exact(const SchmidtDiagonalState& state, double alpha, double beta,
                              const AngleQuad& angles, double sigma,
                              const Truncations& truncations, std::optional<double> sigma_b) {
  const auto ka = measurement_kernel(alpha, 0.0, truncations.n_max_signal,
                                     truncations.lo_a(alpha), truncations.tail_tol);
  const auto kb = measurement_kernel(beta, 0.0, truncations.n_max_signal, truncations.lo_b(beta),
                                     truncations.tail_tol);
  auto binned = [&](double t, double p) {
    const auto dist =
        joint_difference_distribution(state, ka.rotated(t), kb.rotated(p), truncations.tail_tol);
    return noisy_binned_probabilities(dist, sigma, sigma_b);
  };
  const auto tp = binned(angles.theta, angles.phi);
  const auto tpp = binned(angles.theta, angles.phi_p);
  const auto t2p = binned(angles.theta_p, angles.phi);
  const auto t2p2 = binned(angles.theta_p, angles.phi_p);

  BellMetadata m;
  m.engine = "fock";
  m.state_label = state.label;
  m.n_max = truncations.n_max_signal;
  m.sigma_a = sigma;
  m.sigma_b = sigma_b.value_or(sigma);
  m.alpha = alpha;
  m.beta = beta;
  return assemble_bell_result({tp.p_plus_plus, tpp.p_plus_plus, t2p.p_plus_plus,
                               t2p2.p_plus_plus},
                              t2p.p_plus_a, tp.p_plus_b, angles, std::move(m));
}

namespace {

// Kolmogorov distance between the law of i / alpha (atoms at i_min..) and a
// continuous CDF tabulated at the grid nodes.
double kolmogorov_distance(const std::vector<double>& law, int i_min, double alpha,
                           const QuadratureGrid& grid, const std::vector<double>& cdf) {
  const auto& x = grid.points();
  auto continuous_cdf = [&](double v) {
    if (v <= x.front()) return 0.0;
    if (v >= x.back()) return 1.0;
    const auto it = std::upper_bound(x.begin(), x.end(), v);
    const auto k = static_cast<std::size_t>(it - x.begin());
    const double t = (v - x[k - 1]) / (x[k] - x[k - 1]);
    return cdf[k - 1] + t * (cdf[k] - cdf[k - 1]);
  };
  double below = 0.0;  // F(i-)
  double worst = 0.0;
  for (std::size_t k = 0; k < law.size(); ++k) {
    const double g = continuous_cdf(static_cast<double>(i_min + static_cast<int>(k)) / alpha);
    const double above = below + law[k];
    worst = std::max({worst, std::abs(below - g), std::abs(above - g)});
    below = above;
  }
  return worst;
}

}  // namespace

std::vector<ConvergenceRow> convergence_report(const SchmidtDiagonalState& state, double theta,
                                               double phi, const std::vector<double>& alphas,
                                               const ConvergenceOptions& options) {
  const auto& grid = options.grid;
  const auto table = kernels::omp::hermite_table(grid.points(), state.n_max());
  const auto w = grid.trapezoid_weights();
  // Reduced states of a Schmidt-diagonal state are diagonal, so both marginals
  // are sum_n |c_n|^2 phi_n(x)^2 whatever the angle.
  std::vector<double> density(grid.size(), 0.0);
  for (int n = 0; n <= state.n_max(); ++n) {
    const double pn = std::norm(state.coeffs[n]);
    const auto row = table.row(n);
    for (std::size_t k = 0; k < grid.size(); ++k) density[k] += pn * row[k] * row[k];
  }
  std::vector<double> cdf(grid.size(), 0.0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    cdf[k] = cdf[k - 1] + 0.5 * (density[k - 1] + density[k]) * grid.step();
  }

  const auto& tr = options.truncations;
  const auto c = signal_coefficients(state, tr.n_max_signal, tr.tail_tol);
  auto distance = [&](double alpha, double angle, int n_lo) {
    const auto k = measurement_kernel(alpha, angle, tr.n_max_signal, n_lo, tr.tail_tol);
    std::vector<double> law(static_cast<std::size_t>(k.i_max() - k.i_min() + 1), 0.0);
    for (int n = 0; n <= tr.n_max_signal; ++n) {
      const double pn = std::norm(c[n]);
      if (pn == 0.0) continue;
      const auto ln = k.diagonal_law(n);
      for (std::size_t i = 0; i < law.size(); ++i) law[i] += pn * ln[i];
    }
    return kolmogorov_distance(law, k.i_min(), alpha, grid, cdf);
  };

  std::vector<ConvergenceRow> rows;
  for (double alpha : alphas) {
    ConvergenceRow row;
    row.alpha = alpha;
    row.distance_a = distance(alpha, theta, tr.lo_a(alpha));
    row.distance_b = distance(alpha, phi, tr.lo_b(alpha));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cvbell
