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

// bell-scan: runs one configured experiment and writes CSV/JSON artifacts.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cvbell/cli/config.hpp"
#include "cvbell/cli/runner.hpp"
#include "cvbell/version.hpp"

namespace {

template <class T>
void set_if(CLI::Option* opt, std::optional<T>& slot, const T& value) {
  if (opt->count() > 0) slot = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-CH and EPR numerical experiments on two-mode quantum states"};
  app.set_version_flag("--version", std::string(cvbell::kVersion));

  std::string config_path;
  std::string experiment, alpha, angles, grid, out;
  double r0 = 0.0, sigma0 = 0.0;
  int n_max = 0, jobs = 1;

  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* o_exp = app.add_option("--experiment", experiment,
                               "bell-scan | noise-threshold | angle-opt | oracle-compare | epr-sweep");
  auto* o_r0 = app.add_option("--r0", r0, "pair-coherent amplitude (selects that state)");
  auto* o_sigma = app.add_option("--sigma0", sigma0, "quadrature-scale noise; replaces any sigma0 scan");
  auto* o_alpha = app.add_option("--alpha", alpha, "local-oscillator amplitudes, comma separated");
  auto* o_angles = app.add_option("--angles", angles, "theta,phi,theta',phi' in radians");
  auto* o_nmax = app.add_option("--nmax", n_max, "Fock cutoff of the state");
  auto* o_grid = app.add_option("--grid", grid, "quadrature grid lo:hi:step");
  auto* o_jobs = app.add_option("--jobs", jobs, "parallel scan points")->check(CLI::PositiveNumber);
  auto* o_out = app.add_option("--out", out, "output directory (default $CVBELL_OUTPUT_DIR or .)");
  // Negative numbers such as --angles -0.5,... must not be taken for flags.
  app.allow_extras(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  cvbell::cli::Overrides overrides;
  set_if(o_exp, overrides.experiment, experiment);
  set_if(o_r0, overrides.r0, r0);
  set_if(o_sigma, overrides.sigma0, sigma0);
  set_if(o_alpha, overrides.alpha, alpha);
  set_if(o_angles, overrides.angles, angles);
  set_if(o_nmax, overrides.n_max, n_max);
  set_if(o_grid, overrides.grid, grid);
  set_if(o_jobs, overrides.jobs, jobs);
  set_if(o_out, overrides.out, out);

  const char* env_dir = std::getenv("CVBELL_OUTPUT_DIR");
  try {
    const auto config = cvbell::cli::load_config(config_path, overrides, env_dir ? env_dir : "");
    const auto summary = cvbell::cli::run(config);
    for (const auto& line : summary.notes) std::cout << line << '\n';
    for (const auto& file : summary.files) std::cout << "wrote " << file.string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "bell-scan: " << e.what() << '\n';
    return cvbell::cli::exit_code_for(e);
  }
}
