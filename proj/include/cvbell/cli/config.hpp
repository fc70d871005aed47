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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvbell/errors.hpp"
#include "cvbell/fock_oracle.hpp"
#include "cvbell/quad_bell.hpp"
#include "cvbell/states.hpp"

namespace cvbell::cli {

/// Invalid configuration; the message is already anchored ("file:line:col: ...").
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Experiment { BellScan, NoiseThreshold, AngleOpt, OracleCompare, EprSweep };

std::string to_string(Experiment e);

struct Sigma0Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// start, start + step, ... up to stop (inclusive within 1e-9 steps).
  std::vector<double> values() const;
};

struct RunConfig {
  Experiment experiment = Experiment::BellScan;

  std::string state_kind = "pair-coherent";
  double r0 = 1.1;
  double r = 1.0;

  int n_max = kDefaultQuadratureNmax;
  double tail_tol = kDefaultTailTolerance;
  QuadratureGrid grid = QuadratureGrid::standard();
  Truncations truncations;

  AngleQuad angles = AngleQuad::reference();
  NoiseModel noise;

  std::optional<Sigma0Range> sigma0_scan;
  std::vector<double> alphas;    // oracle-compare
  std::vector<double> energies;  // noise-threshold, epr-sweep
  std::vector<double> squeezing; // epr-sweep

  ThresholdOptions threshold;
  OptimizerOptions optimizer;
  double macroscopic_threshold = 1e4;
  double additive_error = 0.0;

  std::string output_dir = ".";
  std::string format = "csv";
  bool distributions = false;

  int jobs = 1;

  /// Effective configuration (defaults merged) without "jobs" and "output.path",
  /// which do not influence results.  Embedded in every output file.
  nlohmann::json provenance;

  SchmidtDiagonalState make_state() const;
};

/// Built-in defaults as a JSON document.
nlohmann::json default_config();

/// Parses and validates config text.  Errors carry `source:line:col`.
nlohmann::json parse_config_text(std::string_view text, const std::string& source);

/// Per-field command-line overrides; unset fields leave the document untouched.
struct Overrides {
  std::optional<std::string> experiment;
  std::optional<double> r0;
  std::optional<double> sigma0;
  std::optional<std::string> alpha;   // comma list
  std::optional<std::string> angles;  // a,b,c,d
  std::optional<int> n_max;
  std::optional<std::string> grid;    // lo:hi:step
  std::optional<int> jobs;
  std::optional<std::string> out;
};

void apply_overrides(nlohmann::json& doc, const Overrides& overrides);

/// Merges `user` over the defaults, validates the result and builds a RunConfig.
/// `default_output_dir` fills output.path when the document leaves it unset.
RunConfig resolve_config(const nlohmann::json& user, const std::string& default_output_dir);

/// Reads a file (or returns an empty document for an empty path), applies the
/// overrides and resolves.
RunConfig load_config(const std::string& path, const Overrides& overrides,
                      const std::string& default_output_dir);

}  // namespace cvbell::cli
