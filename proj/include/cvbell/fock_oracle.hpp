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

// Exact finite-amplitude model of the balanced detector: a strong coherent
// local oscillator |alpha> on a_plus and the signal on a_minus are mixed on a
// 50/50 beam splitter after a phase shift theta, and the photon-number
// difference i = n(c_plus) - n(c_minus) is recorded.  For large alpha, i/alpha
// tends in law to the quadrature X_theta of the signal.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cvbell/hilbert.hpp"
#include "cvbell/kernels.hpp"
#include "cvbell/quad_bell.hpp"
#include "cvbell/states.hpp"

namespace cvbell {

struct Truncations {
  int n_max_signal = 12;
  std::optional<int> n_max_lo_a;  // defaults to default_lo(alpha, tail_tol)
  std::optional<int> n_max_lo_b;
  double tail_tol = kDefaultTailTolerance;

  /// ceil(alpha^2 + 8 alpha), raised if needed until the Poisson(alpha^2)
  /// tail beyond it is below tail_tol (matters only for small alpha).
  static int default_lo(double alpha, double tail_tol = kDefaultTailTolerance);
  int lo_a(double alpha) const { return n_max_lo_a.value_or(default_lo(alpha, tail_tol)); }
  int lo_b(double beta) const { return n_max_lo_b.value_or(default_lo(beta, tail_tol)); }
};

/// POVM elements M_i(n, n') = <n'| Pi_i |n> of the difference outcome i,
/// restricted to signal photon numbers n, n' <= n_signal.  Stored as the real
/// phase-0 kernel; the phase enters as M_i(n, n'; theta) = e^{-i(n-n')theta} M_i(n, n'; 0).
class MeasurementKernel {
 public:
  MeasurementKernel(double theta, kernels::DifferenceKernel base, int n_lo);

  double theta() const { return theta_; }
  double alpha() const { return base_.alpha; }
  int n_signal() const { return base_.n_signal; }
  int n_lo() const { return n_lo_; }

  /// Outcomes outside [i_min, i_max] carry no weight above 1e-30.
  int i_min() const { return i_min_; }
  int i_max() const { return i_max_; }

  const Eigen::MatrixXd& base(int i) const { return base_.at(i); }
  Eigen::MatrixXcd matrix(int i) const;
  complex element(int i, int n, int np) const;

  /// Same local oscillator, different phase; no recomputation.
  MeasurementKernel rotated(double theta) const;

  /// max_n |sum_i M_i(n, n) - 1| over n <= n_upto (all n when negative).
  double completeness_defect(int n_upto = -1) const;
  /// max over i, n, n' of |M_i(n, n') - conj(M_i(n', n))|.
  double hermiticity_defect() const;
  /// Outcome law P(i | n) for i_min..i_max.
  std::vector<double> diagonal_law(int n) const;

 private:
  double theta_;
  kernels::DifferenceKernel base_;
  int n_lo_;
  int i_min_;
  int i_max_;
};

/// Builds the kernel in closed form (OpenMP).  Throws TruncationError when the
/// local oscillator |alpha> does not fit within n_max_lo photons.
MeasurementKernel measurement_kernel(double alpha, double theta, int n_max_signal, int n_max_lo,
                                     double tail_tol = kDefaultTailTolerance);
MeasurementKernel measurement_kernel(double alpha, double theta, int n_max_signal);

/// Complex kernel blocks indexed by outcome.
struct KernelTable {
  int i_min = 0;
  std::vector<Eigen::MatrixXcd> blocks;

  int i_max() const { return i_min + static_cast<int>(blocks.size()) - 1; }
  const Eigen::MatrixXcd& at(int i) const { return blocks[static_cast<std::size_t>(i - i_min)]; }
};

/// Reference construction: every |k>|n> with k <= n_max_lo is pushed through
/// beamsplitter_unitary(n_max_lo + n_max_signal, theta) block by block and the
/// output amplitudes are binned by photon-number difference.  Serial, cubic in
/// the cutoff; meant for small alpha.
KernelTable measurement_kernel_reference(double alpha, double theta, int n_max_signal,
                                         int n_max_lo);

/// Joint law of the two photon-number differences, dense over the kernels' support.
class JointDifferenceDistribution {
 public:
  JointDifferenceDistribution(int i_min, int i_max, int j_min, int j_max, std::vector<double> p);

  int i_min() const { return i_min_; }
  int i_max() const { return i_max_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }

  /// Zero outside the stored support.
  double operator()(int i, int j) const;
  double total() const;
  std::vector<double> marginal_a() const;  // index i - i_min
  std::vector<double> marginal_b() const;  // index j - j_min

 private:
  int i_min_, i_max_, j_min_, j_max_;
  std::vector<double> p_;  // row-major (i, j)
};

/// P(i, j) = sum_{n,n'} c_n conj(c_n') M^A_i(n, n') M^B_j(n, n').  Entries in
/// [-1e-10, 0) are clipped to zero; anything lower raises NegativeProbability.
JointDifferenceDistribution joint_difference_distribution(const SchmidtDiagonalState& state,
                                                          const MeasurementKernel& a,
                                                          const MeasurementKernel& b,
                                                          double tail_tol = kDefaultTailTolerance);
JointDifferenceDistribution joint_difference_distribution(const SchmidtDiagonalState& state,
                                                          double alpha, double beta, double theta,
                                                          double phi,
                                                          const Truncations& truncations = {});

struct BinnedProbabilities {
  double p_plus_plus = 0.0;
  double p_plus_a = 0.0;
  double p_plus_b = 0.0;
};

/// Sign binning: + at A with probability P(noise >= -i) for Gaussian noise of
/// standard deviation sigma (photons), or 1{i >= 0} when sigma = 0.
BinnedProbabilities noisy_binned_probabilities(const JointDifferenceDistribution& dist,
                                               double sigma_a, std::optional<double> sigma_b = {});

BellResult ch_statistic_exact(const SchmidtDiagonalState& state, double alpha, double beta,
                              const AngleQuad& angles, double sigma,
                              const Truncations& truncations = {},
                              std::optional<double> sigma_b = {});

struct ConvergenceRow {
  double alpha = 0.0;
  double distance_a = 0.0;  // Kolmogorov distance, law of i/alpha vs quadrature marginal at A
  double distance_b = 0.0;
};

struct ConvergenceOptions {
  QuadratureGrid grid = QuadratureGrid::standard();
  Truncations truncations;
};

/// One row per alpha (alpha = beta), in the order given.
std::vector<ConvergenceRow> convergence_report(const SchmidtDiagonalState& state, double theta,
                                               double phi, const std::vector<double>& alphas,
                                               const ConvergenceOptions& options = {});

}  // namespace cvbell
