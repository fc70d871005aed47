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

// Bell-Clauser-Horne statistic for sign-binned quadrature measurements in the
// large-local-oscillator limit, with Gaussian measurement noise of standard
// deviation sigma0 (quadrature units) applied independently at A and B.
//
// For a Schmidt-diagonal state every joint probability depends on the analyzer
// angles only through their sum, and the singles do not depend on them at all.
// The engine therefore integrates once per noise level into weighted Gram
// matrices W(n, n') = int w(x) phi_n(x) phi_n'(x) dx and evaluates
//   P++(psi) = sum_{n,n'} Re(c_n conj(c_n') e^{-i(n-n') psi}) W_A(n,n') W_B(n,n')
// as a cosine series in psi = theta + phi.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvbell/hilbert.hpp"
#include "cvbell/kernels.hpp"
#include "cvbell/states.hpp"

namespace cvbell {

enum class Side { A, B };

struct AngleQuad {
  double theta = 0.0;
  double phi = 0.0;
  double theta_p = 0.0;
  double phi_p = 0.0;

  /// theta = 0, phi = -pi/4, theta' = pi/2, phi' = -3pi/4.
  static AngleQuad reference();

  /// Each angle reduced to [-pi, pi).
  AngleQuad canonical() const;
  bool finite() const;
  std::array<double, 4> as_array() const { return {theta, phi, theta_p, phi_p}; }
};

struct NoiseModel {
  double sigma0 = 0.0;
  std::optional<double> sigma0_b;  // B-side override; defaults to sigma0
  std::optional<double> E;         // local-oscillator amplitude for photon units

  double sigma(Side side) const { return side == Side::B && sigma0_b ? *sigma0_b : sigma0; }
  /// E * sigma0, when E is known.
  std::optional<double> photon_sigma() const;
  void validate() const;
};

struct BellMetadata {
  std::string engine;  // "quadrature" or "fock"
  std::string state_label;
  int n_max = 0;
  std::optional<std::array<double, 3>> grid;  // lo, hi, step
  double sigma_a = 0.0;  // quadrature units for "quadrature", photons for "fock"
  double sigma_b = 0.0;
  std::optional<double> alpha;
  std::optional<double> beta;
};

struct BellResult {
  double S = 0.0;
  /// P++(theta,phi), P++(theta,phi'), P++(theta',phi), P++(theta',phi').
  std::array<double, 4> joints{};
  double single_a = 0.0;  // P+A(theta')
  double single_b = 0.0;  // P+B(phi)
  AngleQuad angles;
  BellMetadata meta;
};

/// Combines the four joints and two singles; throws DegenerateDenominator when
/// the singles sum below 1e-12.
BellResult assemble_bell_result(const std::array<double, 4>& joints, double single_a,
                                double single_b, const AngleQuad& angles, BellMetadata meta);

/// Probability of a + outcome given quadrature value x: Phi(x / sigma0), or the
/// step 1{x >= 0} without noise.
double sign_weight(double x, double sigma0);

/// Trapezoid weights times sign_weight.  For sigma0 = 0 a node sitting exactly
/// on the jump gets half its trapezoid weight, i.e. the half-line rule.
std::vector<double> sign_quadrature_weights(const QuadratureGrid& grid, double sigma0);

/// Cosine series sum_d Re(b_d e^{-i d psi}) over d = -D..D, stored for d >= 0.
class AngleSumSeries {
 public:
  AngleSumSeries() = default;
  /// Series of sum_{n,n'} c_n conj(c_n') e^{-i(n-n')psi} left(n,n') right(n,n').
  AngleSumSeries(const std::vector<complex>& coeffs, const Eigen::MatrixXd& left,
                 const Eigen::MatrixXd& right);
  double operator()(double angle_sum) const;

 private:
  std::vector<complex> harmonics_;
};

/// Joint and single + probabilities at one noise setting, as functions of the angle sum.
struct CorrelationProfile {
  AngleSumSeries joint;
  AngleSumSeries single_a;
  AngleSumSeries single_b;
};

class QuadratureBellModel {
 public:
  QuadratureBellModel(SchmidtDiagonalState state, QuadratureGrid grid);

  const SchmidtDiagonalState& state() const { return state_; }
  const QuadratureGrid& grid() const { return grid_; }
  const kernels::HermiteTable& table() const { return table_; }

  /// Integral of the tabulated marginal density; 1 up to grid and truncation error.
  double grid_mass() const { return grid_mass_; }

  Eigen::MatrixXd sign_gram(double sigma0) const;
  CorrelationProfile profile(const NoiseModel& noise) const;
  BellResult evaluate(const AngleQuad& angles, const NoiseModel& noise) const;
  double S(const CorrelationProfile& profile, const AngleQuad& angles) const;

 private:
  BellMetadata metadata(const NoiseModel& noise) const;

  SchmidtDiagonalState state_;
  QuadratureGrid grid_;
  kernels::HermiteTable table_;
  Eigen::MatrixXd plain_gram_;
  double grid_mass_ = 0.0;
};

/// P(x_A, x_B) on grid x grid.
Eigen::MatrixXd joint_quadrature_density(const SchmidtDiagonalState& state, double theta,
                                         double phi, const QuadratureGrid& grid);

double p_plus_plus(const SchmidtDiagonalState& state, double theta, double phi,
                   const NoiseModel& noise, const QuadratureGrid& grid);

double p_plus_single(const SchmidtDiagonalState& state, Side side, double angle,
                     const NoiseModel& noise, const QuadratureGrid& grid);

BellResult ch_statistic(const SchmidtDiagonalState& state, const AngleQuad& angles,
                        const NoiseModel& noise, const QuadratureGrid& grid);

/// Same quantity by tabulating each joint density and integrating it directly
/// with the serial kernels.  Slow; kept as a reference for tests and benchmarks.
BellResult ch_statistic_reference(const SchmidtDiagonalState& state, const AngleQuad& angles,
                                  const NoiseModel& noise, const QuadratureGrid& grid);

struct ThresholdOptions {
  double bracket_hi = 10.0;
  double tolerance = 1e-5;
  double max_bracket = 1e6;
};

struct ThresholdResult {
  bool violation = false;  // S(sigma0 = 0) > 1
  double s_at_zero = 0.0;
  double sigma0_max = 0.0;
  double E = 1.0;
  double sigma_photon_max = 0.0;  // E * sigma0_max
  std::vector<std::pair<double, double>> trace;  // (sigma0, S) for every evaluation
};

/// Largest sigma0 with S(sigma0) > 1, by bisection.  When S(0) <= 1 the result
/// has violation == false and zero thresholds.
ThresholdResult noise_threshold(const SchmidtDiagonalState& state, const AngleQuad& angles,
                                double E, const QuadratureGrid& grid,
                                const ThresholdOptions& options = {});
ThresholdResult noise_threshold(const QuadratureBellModel& model, const AngleQuad& angles,
                                double E, const ThresholdOptions& options = {});

struct OptimizerOptions {
  int coarse_steps = 16;   // per angle over [-pi, pi)
  double tolerance = 1e-9; // final compass step
  int max_iterations = 100000;
};

struct AngleOptimum {
  AngleQuad angles;
  double S = 0.0;
  int evaluations = 0;
};

/// Coarse grid over (phi, theta', phi') with theta = 0, then compass refinement.
AngleOptimum optimize_angles(const SchmidtDiagonalState& state, const NoiseModel& noise,
                             const QuadratureGrid& grid, const OptimizerOptions& options = {});
AngleOptimum optimize_angles(const QuadratureBellModel& model, const NoiseModel& noise,
                             const OptimizerOptions& options = {});

}  // namespace cvbell
