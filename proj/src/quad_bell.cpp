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

#include "cvbell/quad_bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cvbell/errors.hpp"

namespace cvbell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDenominatorFloor = 1e-12;

double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0) w += 2.0 * kPi;
  return w - kPi;
}

}  // namespace

AngleQuad AngleQuad::reference() { return AngleQuad{0.0, -kPi / 4, kPi / 2, -3 * kPi / 4}; }

AngleQuad AngleQuad::canonical() const {
  return AngleQuad{wrap_angle(theta), wrap_angle(phi), wrap_angle(theta_p), wrap_angle(phi_p)};
}

bool AngleQuad::finite() const {
  return std::isfinite(theta) && std::isfinite(phi) && std::isfinite(theta_p) &&
         std::isfinite(phi_p);
}

std::optional<double> NoiseModel::photon_sigma() const {
  if (!E) return std::nullopt;
  return *E * sigma0;
}

void NoiseModel::validate() const {
  if (!(sigma0 >= 0)) throw std::invalid_argument("NoiseModel: sigma0 must be >= 0");
  if (sigma0_b && !(*sigma0_b >= 0)) throw std::invalid_argument("NoiseModel: sigma0_b must be >= 0");
  if (E && !(*E > 0)) throw std::invalid_argument("NoiseModel: E must be positive");
}

BellResult assemble_bell_result(const std::array<double, 4>& joints, double single_a,
                                double single_b, const AngleQuad& angles, BellMetadata meta) {
  const double denom = single_a + single_b;
  if (!(denom >= kDenominatorFloor)) {
    throw DegenerateDenominator("Bell statistic: P+A(theta') + P+B(phi) = " +
                                std::to_string(denom));
  }
  BellResult r;
  r.joints = joints;
  r.single_a = single_a;
  r.single_b = single_b;
  r.S = (joints[0] - joints[1] + joints[2] + joints[3]) / denom;
  r.angles = angles;
  r.meta = std::move(meta);
  return r;
}

double sign_weight(double x, double sigma0) {
  if (sigma0 > 0) return gaussian_cdf(x / sigma0);
  return x >= 0 ? 1.0 : 0.0;
}

std::vector<double> sign_quadrature_weights(const QuadratureGrid& grid, double sigma0) {
  auto w = grid.trapezoid_weights();
  const auto& x = grid.points();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (sigma0 <= 0 && x[k] == 0.0) {
      w[k] *= 0.5;
    } else {
      w[k] *= sign_weight(x[k], sigma0);
    }
  }
  return w;
}

AngleSumSeries::AngleSumSeries(const std::vector<complex>& coeffs, const Eigen::MatrixXd& left,
                               const Eigen::MatrixXd& right) {
  const int dim = std::min<int>(static_cast<int>(coeffs.size()), static_cast<int>(left.rows()));
  harmonics_.assign(static_cast<std::size_t>(std::max(dim, 1)), complex(0.0, 0.0));
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m <= n; ++m) {
      harmonics_[n - m] += coeffs[n] * std::conj(coeffs[m]) * left(n, m) * right(n, m);
    }
  }
}

double AngleSumSeries::operator()(double angle_sum) const {
  if (harmonics_.empty()) return 0.0;
  double acc = harmonics_[0].real();
  for (std::size_t d = 1; d < harmonics_.size(); ++d) {
    acc += 2.0 * std::real(harmonics_[d] * std::polar(1.0, -static_cast<double>(d) * angle_sum));
  }
  return acc;
}

QuadratureBellModel::QuadratureBellModel(SchmidtDiagonalState state, QuadratureGrid grid)
    : state_(std::move(state)), grid_(std::move(grid)) {
  if (state_.coeffs.empty()) throw std::invalid_argument("QuadratureBellModel: empty state");
  table_ = kernels::omp::hermite_table(grid_.points(), state_.n_max());
  plain_gram_ = kernels::omp::weighted_gram(table_, grid_.trapezoid_weights());
  grid_mass_ = 0.0;
  for (int n = 0; n <= state_.n_max(); ++n) grid_mass_ += std::norm(state_.coeffs[n]) * plain_gram_(n, n);
}

Eigen::MatrixXd QuadratureBellModel::sign_gram(double sigma0) const {
  return kernels::omp::weighted_gram(table_, sign_quadrature_weights(grid_, sigma0));
}

CorrelationProfile QuadratureBellModel::profile(const NoiseModel& noise) const {
  noise.validate();
  const Eigen::MatrixXd wa = sign_gram(noise.sigma(Side::A));
  const Eigen::MatrixXd wb =
      noise.sigma(Side::B) == noise.sigma(Side::A) ? wa : sign_gram(noise.sigma(Side::B));
  return CorrelationProfile{AngleSumSeries(state_.coeffs, wa, wb),
                            AngleSumSeries(state_.coeffs, wa, plain_gram_),
                            AngleSumSeries(state_.coeffs, plain_gram_, wb)};
}

double QuadratureBellModel::S(const CorrelationProfile& p, const AngleQuad& a) const {
  const double denom = p.single_a(a.theta_p + a.phi) + p.single_b(a.theta + a.phi);
  if (!(denom >= kDenominatorFloor)) {
    throw DegenerateDenominator("Bell statistic: vanishing singles");
  }
  return (p.joint(a.theta + a.phi) - p.joint(a.theta + a.phi_p) + p.joint(a.theta_p + a.phi) +
          p.joint(a.theta_p + a.phi_p)) /
         denom;
}

BellMetadata QuadratureBellModel::metadata(const NoiseModel& noise) const {
  BellMetadata m;
  m.engine = "quadrature";
  m.state_label = state_.label;
  m.n_max = state_.n_max();
  m.grid = std::array<double, 3>{grid_.lo(), grid_.hi(), grid_.step()};
  m.sigma_a = noise.sigma(Side::A);
  m.sigma_b = noise.sigma(Side::B);
  if (noise.E) {
    m.alpha = noise.E;
    m.beta = noise.E;
  }
  return m;
}

BellResult QuadratureBellModel::evaluate(const AngleQuad& a, const NoiseModel& noise) const {
  if (!a.finite()) throw std::invalid_argument("ch_statistic: non-finite angle");
  const auto p = profile(noise);
  const std::array<double, 4> joints{p.joint(a.theta + a.phi), p.joint(a.theta + a.phi_p),
                                     p.joint(a.theta_p + a.phi), p.joint(a.theta_p + a.phi_p)};
  return assemble_bell_result(joints, p.single_a(a.theta_p + a.phi), p.single_b(a.theta + a.phi),
                              a, metadata(noise));
}

Eigen::MatrixXd joint_quadrature_density(const SchmidtDiagonalState& state, double theta,
                                         double phi, const QuadratureGrid& grid) {
  const auto table = kernels::omp::hermite_table(grid.points(), state.n_max());
  return kernels::omp::joint_density(table, state.coeffs, theta + phi);
}

double p_plus_plus(const SchmidtDiagonalState& state, double theta, double phi,
                   const NoiseModel& noise, const QuadratureGrid& grid) {
  const QuadratureBellModel model(state, grid);
  return model.profile(noise).joint(theta + phi);
}

double p_plus_single(const SchmidtDiagonalState& state, Side side, double angle,
                     const NoiseModel& noise, const QuadratureGrid& grid) {
  const QuadratureBellModel model(state, grid);
  const auto p = model.profile(noise);
  return side == Side::A ? p.single_a(angle) : p.single_b(angle);
}

BellResult ch_statistic(const SchmidtDiagonalState& state, const AngleQuad& angles,
                        const NoiseModel& noise, const QuadratureGrid& grid) {
  return QuadratureBellModel(state, grid).evaluate(angles, noise);
}

BellResult ch_statistic_reference(const SchmidtDiagonalState& state, const AngleQuad& a,
                                  const NoiseModel& noise, const QuadratureGrid& grid) {
  noise.validate();
  const auto table = kernels::serial::hermite_table(grid.points(), state.n_max());
  const auto wa = sign_quadrature_weights(grid, noise.sigma(Side::A));
  const auto wb = sign_quadrature_weights(grid, noise.sigma(Side::B));
  const auto plain = grid.trapezoid_weights();

  auto density = [&](double t, double p) {
    return kernels::serial::joint_density(table, state.coeffs, t + p);
  };
  const Eigen::MatrixXd d_tp = density(a.theta, a.phi);
  const Eigen::MatrixXd d_tpp = density(a.theta, a.phi_p);
  const Eigen::MatrixXd d_tpp2 = density(a.theta_p, a.phi);
  const Eigen::MatrixXd d_tp2p2 = density(a.theta_p, a.phi_p);

  const std::array<double, 4> joints{kernels::serial::integrate_density(d_tp, wa, wb),
                                     kernels::serial::integrate_density(d_tpp, wa, wb),
                                     kernels::serial::integrate_density(d_tpp2, wa, wb),
                                     kernels::serial::integrate_density(d_tp2p2, wa, wb)};
  BellMetadata m;
  m.engine = "quadrature";
  m.state_label = state.label;
  m.n_max = state.n_max();
  m.grid = std::array<double, 3>{grid.lo(), grid.hi(), grid.step()};
  m.sigma_a = noise.sigma(Side::A);
  m.sigma_b = noise.sigma(Side::B);
  return assemble_bell_result(joints, kernels::serial::integrate_density(d_tpp2, wa, plain),
                              kernels::serial::integrate_density(d_tp, plain, wb), a, std::move(m));
}

ThresholdResult noise_threshold(const QuadratureBellModel& model, const AngleQuad& angles,
                                double E, const ThresholdOptions& options) {
  if (!(E > 0)) throw std::invalid_argument("noise_threshold: E must be positive");
  ThresholdResult res;
  res.E = E;
  auto s_at = [&](double sigma0) {
    const double s = model.S(model.profile(NoiseModel{sigma0, std::nullopt, E}), angles);
    res.trace.emplace_back(sigma0, s);
    return s;
  };
  res.s_at_zero = s_at(0.0);
  if (!(res.s_at_zero > 1.0)) return res;
  res.violation = true;

  double lo = 0.0;
  double hi = options.bracket_hi;
  while (s_at(hi) > 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > options.max_bracket) {
      throw ConsistencyError("noise_threshold: violation persists beyond sigma0 = " +
                             std::to_string(options.max_bracket));
    }
  }
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (s_at(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  res.sigma0_max = lo;
  res.sigma_photon_max = E * lo;
  std::sort(res.trace.begin(), res.trace.end());
  return res;
}

ThresholdResult noise_threshold(const SchmidtDiagonalState& state, const AngleQuad& angles,
                                double E, const QuadratureGrid& grid,
                                const ThresholdOptions& options) {
  return noise_threshold(QuadratureBellModel(state, grid), angles, E, options);
}

AngleOptimum optimize_angles(const QuadratureBellModel& model, const NoiseModel& noise,
                             const OptimizerOptions& options) {
  if (options.coarse_steps < 1) throw std::invalid_argument("optimize_angles: coarse_steps < 1");
  const auto profile = model.profile(noise);
  AngleOptimum best;
  auto eval = [&](const AngleQuad& a) {
    ++best.evaluations;
    return model.S(profile, a);
  };

  // theta is fixed at 0: shifting theta, theta' by d and phi, phi' by -d leaves every sum unchanged.
  const int k = options.coarse_steps;
  const double h = 2.0 * kPi / k;
  // pi * (2i/k - 1) hits multiples of pi/4 exactly when k is a multiple of 8.
  auto node = [k](int i) { return kPi * (2.0 * i / k - 1.0); };
  best.S = -1.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      for (int l = 0; l < k; ++l) {
        const AngleQuad a{0.0, node(i), node(j), node(l)};
        const double s = eval(a);
        if (s > best.S) {
          best.S = s;
          best.angles = a;
        }
      }
    }
  }

  double step = h / 2;
  int iterations = 0;
  while (step >= options.tolerance && iterations < options.max_iterations) {
    ++iterations;
    bool improved = false;
    for (int coord = 0; coord < 3 && !improved; ++coord) {
      for (double sign : {1.0, -1.0}) {
        AngleQuad trial = best.angles;
        double& v = coord == 0 ? trial.phi : coord == 1 ? trial.theta_p : trial.phi_p;
        v += sign * step;
        const double s = eval(trial);
        if (s > best.S + 1e-15) {
          best.S = s;
          best.angles = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step /= 2;
  }
  best.angles = best.angles.canonical();
  return best;
}

AngleOptimum optimize_angles(const SchmidtDiagonalState& state, const NoiseModel& noise,
                             const QuadratureGrid& grid, const OptimizerOptions& options) {
  return optimize_angles(QuadratureBellModel(state, grid), noise, options);
}

}  // namespace cvbell
