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

#include "cvbell/epr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cvbell/errors.hpp"

namespace cvbell {

namespace {

struct LinearFit {
  double error;
  double gain;
};

LinearFit best_linear_inference(double var_a, double var_b, double cov_ab) {
  if (!(var_b > 0)) {
    throw SingularCovariance("inference_errors: B-side variance " + std::to_string(var_b) +
                             " is not positive");
  }
  const double gain = cov_ab / var_b;
  // Clamp roundoff: the residual variance of a valid covariance is >= 0.
  const double residual = std::max(0.0, var_a - cov_ab * gain);
  return {std::sqrt(residual), gain};
}

}  // namespace

InferenceErrors inference_errors(const GaussianCovariance& cov, double additive_error) {
  if (!(additive_error >= 0)) {
    throw std::invalid_argument("inference_errors: additive_error must be >= 0");
  }
  const auto x = best_linear_inference(cov.var(quad::kXA), cov.var(quad::kXB),
                                       cov.cov(quad::kXA, quad::kXB));
  const auto p = best_linear_inference(cov.var(quad::kPA), cov.var(quad::kPB),
                                       cov.cov(quad::kPA, quad::kPB));
  return InferenceErrors{x.error + additive_error, p.error + additive_error, x.gain, p.gain};
}

EprReport epr_criterion(double delta1, double delta2, double E) {
  if (!(E > 0)) throw std::invalid_argument("epr_criterion: E must be positive");
  if (!(delta1 >= 0) || !(delta2 >= 0)) {
    throw std::invalid_argument("epr_criterion: inference errors must be >= 0");
  }
  EprReport rep;
  rep.E = E;
  rep.delta1 = delta1;
  rep.delta2 = delta2;
  rep.delta_x = 0.5 * E * delta1;
  rep.delta_y = 0.5 * E * delta2;
  rep.product = rep.delta_x * rep.delta_y;
  rep.bound = 0.25 * E * E;
  rep.sz_scale = E * E;
  rep.satisfied = rep.product < rep.bound;
  return rep;
}

EprReport epr_for_squeezing(double r, double E, double additive_error) {
  const auto errors = inference_errors(tmsv_covariance(r), additive_error);
  auto rep = epr_criterion(errors.delta1, errors.delta2, E);
  rep.r = r;
  return rep;
}

Margins macroscopicity_margins(const EprReport& report, double threshold) {
  Margins m;
  m.m1 = 2.0 * (0.5 * report.E - report.delta_x);
  m.m2 = 2.0 * (0.5 * report.E - report.delta_y);
  m.threshold = threshold;
  m.macroscopic1 = m.m1 >= threshold;
  m.macroscopic2 = m.m2 >= threshold;
  return m;
}

}  // namespace cvbell
