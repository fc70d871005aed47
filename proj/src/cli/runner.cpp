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

#include "cvbell/cli/runner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <omp.h>

#include "cvbell/cli/output.hpp"
#include "cvbell/epr.hpp"
#include "cvbell/fock_oracle.hpp"
#include "cvbell/quad_bell.hpp"
#include "cvbell/serialize.hpp"

namespace cvbell::cli {
namespace {

using nlohmann::json;

// Runs body(k) for k in [0, n).  Each call writes only its own slot, so the
// output order is the index order whatever the number of threads.  The first
// exception (lowest index) is rethrown after the loop.
template <class Body>
void for_each_point(int jobs, std::size_t n, Body body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
  for (long k = 0; k < count; ++k) {
    try {
      body(static_cast<std::size_t>(k));
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void check_probability(double p, const char* what) {
  if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) {
    throw ConsistencyError(std::string(what) + " outside [0, 1]: " + format_number(p));
  }
}

void check_result(const BellResult& r) {
  for (double p : r.joints) check_probability(p, "joint probability");
  check_probability(r.single_a, "single probability");
  check_probability(r.single_b, "single probability");
}

std::string note(const std::string& label, double value) {
  return label + " = " + format_number(value);
}

// The quadrature engine integrates over a finite window; say so when a broad
// state (strong squeezing) spills out of it.
void warn_on_window(const QuadratureBellModel& model, RunSummary& summary) {
  const double missing = 1.0 - model.grid_mass();
  if (std::abs(missing) > 1e-6) {
    summary.notes.push_back("warning: the quadrature grid misses " + format_number(missing) +
                            " of the probability; widen numerics.grid");
  }
}

bool want_csv(const RunConfig& c) { return c.format == "csv" || c.format == "both"; }
bool want_json(const RunConfig& c) { return c.format == "json" || c.format == "both"; }

std::vector<double> bell_row(double x, const BellResult& r) {
  return {x, r.S, r.joints[0], r.joints[1], r.joints[2], r.joints[3], r.single_a, r.single_b};
}

std::vector<std::string> bell_columns(const std::string& x) {
  return {x,          "S",        "P_pp_theta_phi", "P_pp_theta_phip", "P_pp_thetap_phi",
          "P_pp_thetap_phip", "P_plus_A_thetap", "P_plus_B_phi"};
}

void bell_scan(const RunConfig& c, ArtifactWriter& out, RunSummary& summary) {
  const QuadratureBellModel model(c.make_state(), c.grid);
  warn_on_window(model, summary);
  const auto sigmas = c.sigma0_scan ? c.sigma0_scan->values() : std::vector<double>{c.noise.sigma0};
  std::vector<BellResult> results(sigmas.size());
  for_each_point(c.jobs, sigmas.size(), [&](std::size_t k) {
    NoiseModel noise = c.noise;
    noise.sigma0 = sigmas[k];
    if (noise.sigma0_b) noise.sigma0_b = sigmas[k];
    results[k] = model.evaluate(c.angles, noise);
  });

  std::vector<std::vector<double>> rows;
  json records = json::array();
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    check_result(results[k]);
    rows.push_back(bell_row(sigmas[k], results[k]));
    records.push_back(results[k]);
  }
  if (want_csv(c)) out.write_table("bell_scan.csv", bell_columns("sigma0"), rows);
  if (want_json(c)) out.write_json("bell_scan.json", records);
  if (!results.empty()) summary.notes.push_back(note("S at sigma0 = " + format_number(sigmas[0]), results[0].S));
}

void noise_scan(const RunConfig& c, ArtifactWriter& out, RunSummary& summary) {
  const QuadratureBellModel model(c.make_state(), c.grid);
  warn_on_window(model, summary);
  ThresholdOptions options = c.threshold;
  std::vector<ThresholdResult> results(c.energies.size());
  for_each_point(c.jobs, c.energies.size(), [&](std::size_t k) {
    results[k] = noise_threshold(model, c.angles, c.energies[k], options);
  });

  std::vector<std::vector<double>> rows, fig;
  json records = json::array();
  for (const auto& r : results) {
    rows.push_back({r.E, r.sigma0_max, r.sigma_photon_max, r.s_at_zero, r.violation ? 1.0 : 0.0});
    fig.push_back({r.E, r.sigma_photon_max});
    records.push_back(r);
  }
  if (want_csv(c)) {
    out.write_table("noise_threshold.csv",
                    {"E", "sigma0_max", "sigma_photon_max", "S_at_zero", "violation"}, rows);
  }
  if (want_json(c)) out.write_json("noise_threshold.json", records);
  out.write_table("fig3b.csv", {"alpha", "sigma_max"}, fig);
  if (!results.empty()) {
    summary.notes.push_back(results.front().violation ? note("sigma0_max", results.front().sigma0_max)
                                                      : "no violation at sigma0 = 0");
  }
}

void angle_search(const RunConfig& c, ArtifactWriter& out, RunSummary& summary) {
  const QuadratureBellModel model(c.make_state(), c.grid);
  warn_on_window(model, summary);
  const auto best = optimize_angles(model, c.noise, c.optimizer);
  const auto reference = model.evaluate(c.angles, c.noise);
  check_result(reference);
  const auto& a = best.angles;
  if (want_csv(c)) {
    out.write_table("angle_opt.csv",
                    {"theta", "phi", "theta_p", "phi_p", "S", "S_configured", "evaluations"},
                    {{a.theta, a.phi, a.theta_p, a.phi_p, best.S, reference.S,
                      static_cast<double>(best.evaluations)}});
  }
  if (want_json(c)) out.write_json("angle_opt.json", json{{"optimum", best}, {"configured", reference}});
  summary.notes.push_back(note("optimized S", best.S));
}

void oracle_compare(const RunConfig& c, ArtifactWriter& out, RunSummary& summary) {
  const auto state = c.make_state();
  const auto limit = ch_statistic(state, c.angles, c.noise, c.grid);
  check_result(limit);

  std::vector<BellResult> exact(c.alphas.size());
  for_each_point(c.jobs, c.alphas.size(), [&](std::size_t k) {
    const double alpha = c.alphas[k];
    // The same noise expressed in photons at this local-oscillator amplitude.
    std::optional<double> sigma_b;
    if (c.noise.sigma0_b) sigma_b = alpha * *c.noise.sigma0_b;
    exact[k] = ch_statistic_exact(state, alpha, alpha, c.angles, alpha * c.noise.sigma0,
                                  c.truncations, sigma_b);
  });

  std::vector<std::vector<double>> rows, fig;
  json records = json::array();
  for (std::size_t k = 0; k < exact.size(); ++k) {
    check_result(exact[k]);
    rows.push_back({c.alphas[k], exact[k].S, limit.S, std::abs(exact[k].S - limit.S)});
    fig.push_back({c.alphas[k], exact[k].S});
    records.push_back(exact[k]);
  }
  if (want_csv(c)) out.write_table("oracle_compare.csv", {"alpha", "S_exact", "S_limit", "abs_diff"}, rows);
  if (want_json(c)) out.write_json("oracle_compare.json", json{{"limit", limit}, {"exact", records}});
  out.write_table("fig3a.csv", {"alpha", "S_exact"}, fig);

  ConvergenceOptions options;
  options.grid = c.grid;
  options.truncations = c.truncations;
  const auto convergence = convergence_report(state, c.angles.theta, c.angles.phi, c.alphas, options);
  std::ostringstream csv;
  write_convergence_csv(csv, convergence);
  out.write_csv_body("convergence.csv", csv.str());

  if (c.distributions) {
    for (double alpha : c.alphas) {
      const auto dist = joint_difference_distribution(state, alpha, alpha, c.angles.theta,
                                                      c.angles.phi, c.truncations);
      std::ostringstream body;
      write_distribution_csv(body, dist, 1e-15);
      out.write_csv_body("distribution_alpha_" + format_number(alpha) + ".csv", body.str());
    }
  }
  summary.notes.push_back(note("S_limit", limit.S));
  if (!exact.empty()) summary.notes.push_back(note("S_exact at alpha = " + format_number(c.alphas.back()), exact.back().S));
}

void epr_sweep(const RunConfig& c, ArtifactWriter& out, RunSummary& summary) {
  std::vector<std::vector<double>> rows;
  json records = json::array();
  std::size_t satisfied = 0;
  for (double r : c.squeezing) {
    for (double E : c.energies) {
      const auto report = epr_for_squeezing(r, E, c.additive_error);
      const auto m = macroscopicity_margins(report, c.macroscopic_threshold);
      rows.push_back({r, E, report.delta1, report.delta2, report.delta_x, report.delta_y,
                      report.product, report.bound, report.satisfied ? 1.0 : 0.0, m.m1, m.m2,
                      m.macroscopic1 ? 1.0 : 0.0, m.macroscopic2 ? 1.0 : 0.0});
      records.push_back(json{{"report", report}, {"margins", m}});
      satisfied += report.satisfied ? 1 : 0;
    }
  }
  if (want_csv(c)) {
    out.write_table("epr_sweep.csv",
                    {"r", "E", "delta1", "delta2", "delta_x", "delta_y", "product", "bound",
                     "satisfied", "m1", "m2", "macroscopic1", "macroscopic2"},
                    rows);
  }
  if (want_json(c)) out.write_json("epr_sweep.json", records);
  summary.notes.push_back("criterion satisfied at " + std::to_string(satisfied) + " of " +
                          std::to_string(rows.size()) + " points");
}

}  // namespace

RunSummary run(const RunConfig& config) {
  RunSummary summary;
  ArtifactWriter out(config.output_dir, config);
  switch (config.experiment) {
    case Experiment::BellScan: bell_scan(config, out, summary); break;
    case Experiment::NoiseThreshold: noise_scan(config, out, summary); break;
    case Experiment::AngleOpt: angle_search(config, out, summary); break;
    case Experiment::OracleCompare: oracle_compare(config, out, summary); break;
    case Experiment::EprSweep: epr_sweep(config, out, summary); break;
  }
  summary.files = out.written();
  summary.notes.push_back("config_sha256 " + out.config_hash());
  return summary;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 1;
  if (dynamic_cast<const TruncationError*>(&e)) return 2;
  if (dynamic_cast<const NegativeProbability*>(&e) || dynamic_cast<const ConsistencyError*>(&e) ||
      dynamic_cast<const DegenerateDenominator*>(&e) || dynamic_cast<const SingularCovariance*>(&e)) {
    return 3;
  }
  if (dynamic_cast<const OutputError*>(&e)) return 4;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return 1;
  return 5;
}

}  // namespace cvbell::cli
