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

// JSON records and CSV tables for library results.  CSV numbers are written
// with 12 significant digits; lines starting with '#' are comments.

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvbell/epr.hpp"
#include "cvbell/fock_oracle.hpp"
#include "cvbell/quad_bell.hpp"
#include "cvbell/states.hpp"

namespace cvbell {

/// "%.12g"; non-finite values become "nan", "inf" or "-inf".
std::string format_number(double v);

void to_json(nlohmann::json& j, const SchmidtDiagonalState& s);
/// Accepts coefficients either as numbers or as [re, im] pairs.
void from_json(const nlohmann::json& j, SchmidtDiagonalState& s);

void to_json(nlohmann::json& j, const AngleQuad& a);
void to_json(nlohmann::json& j, const BellResult& r);
void to_json(nlohmann::json& j, const ThresholdResult& r);
void to_json(nlohmann::json& j, const AngleOptimum& r);
void to_json(nlohmann::json& j, const EprReport& r);
void to_json(nlohmann::json& j, const Margins& m);
void to_json(nlohmann::json& j, const CrosscheckReport& r);
void to_json(nlohmann::json& j, const ConvergenceRow& r);

/// Columns i,j,probability; entries at or below `min_probability` are skipped.
void write_distribution_csv(std::ostream& out, const JointDifferenceDistribution& dist,
                            double min_probability = 0.0);

/// Columns alpha,distance (A side), distance_b.
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

}  // namespace cvbell
