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

// Macroscopic EPR criterion for quadrature-correlated fields read out with a
// local oscillator of amplitude E.  Quadrature-unit inference errors Delta1,
// Delta2 become spin-unit errors Delta_x = E Delta1 / 2, Delta_y = E Delta2 / 2,
// and the EPR paradox is demonstrated when Delta_x Delta_y < E^2 / 4.

#include <optional>

#include "cvbell/states.hpp"

namespace cvbell {

inline constexpr double kDefaultMacroscopicThreshold = 1e4;

struct InferenceErrors {
  double delta1 = 0.0;  // X_0^A inferred from X_0^B
  double delta2 = 0.0;  // X_{pi/2}^A inferred from X_{pi/2}^B
  double gain1 = 0.0;   // optimal linear estimator g in X^A ~ g X^B
  double gain2 = 0.0;
};

/// Optimal linear inference: Delta^2 = min_g Var(X^A - g X^B) = Var_A - Cov^2 / Var_B.
/// `additive_error` (quadrature units) is added to both errors to account for
/// apparatus noise; it is zero by default.  Throws SingularCovariance when a
/// B-side variance is not positive.
InferenceErrors inference_errors(const GaussianCovariance& cov, double additive_error = 0.0);

struct EprReport {
  std::optional<double> r;  // squeezing parameter, when known
  double E = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta_x = 0.0;  // E delta1 / 2
  double delta_y = 0.0;  // E delta2 / 2
  double product = 0.0;  // delta_x delta_y
  double bound = 0.0;    // E^2 / 4 = |<S_z>| / 2
  double sz_scale = 0.0; // 2 |<S_z>| = E^2, in photons
  bool satisfied = false;
};

EprReport epr_criterion(double delta1, double delta2, double E);

/// tmsv_covariance(r) -> inference_errors -> epr_criterion, with r recorded.
EprReport epr_for_squeezing(double r, double E, double additive_error = 0.0);

struct Margins {
  double m1 = 0.0;  // 2 (E/2 - Delta_x), photons
  double m2 = 0.0;  // 2 (E/2 - Delta_y)
  double threshold = kDefaultMacroscopicThreshold;
  bool macroscopic1 = false;
  bool macroscopic2 = false;
};

/// Each margin is flagged macroscopic iff it is at least `threshold` photons.
Margins macroscopicity_margins(const EprReport& report,
                               double threshold = kDefaultMacroscopicThreshold);

}  // namespace cvbell
