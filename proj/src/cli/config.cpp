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

#include "cvbell/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cvbell/cli/schema.hpp"
#include "cvbell/cli/schema_text.hpp"

namespace cvbell::cli {
namespace {

using nlohmann::json;

const json& run_schema() {
  static const json schema = json::parse(kRunConfigSchema);
  return schema;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(flag + ": cannot read \"" + item + "\" as a number");
    }
  }
  return out;
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::BellScan: return "bell-scan";
    case Experiment::NoiseThreshold: return "noise-threshold";
    case Experiment::AngleOpt: return "angle-opt";
    case Experiment::OracleCompare: return "oracle-compare";
    case Experiment::EprSweep: return "epr-sweep";
  }
  return "unknown";
}

std::vector<double> Sigma0Range::values() const {
  std::vector<double> out;
  if (stop < start) return out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (long k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

SchmidtDiagonalState RunConfig::make_state() const {
  if (state_kind == "pair-coherent") return pair_coherent(r0, n_max, tail_tol);
  if (state_kind == "two-mode-squeezed") return two_mode_squeezed(r, n_max, tail_tol);
  return vacuum_state(n_max);
}

json default_config() {
  const auto a = AngleQuad::reference();
  return json{
      {"experiment", "bell-scan"},
      {"state", {{"kind", "pair-coherent"}, {"r0", 1.1}, {"r", 1.0}}},
      {"numerics",
       {{"n_max", kDefaultQuadratureNmax},
        {"tail_tol", kDefaultTailTolerance},
        {"grid", {{"lo", -8.0}, {"hi", 8.0}, {"step", 0.01}}},
        {"n_max_signal", 12}}},
      {"angles", {a.theta, a.phi, a.theta_p, a.phi_p}},
      {"noise", {{"sigma0", 0.0}}},
      {"scan", {{"alpha", {5.0, 10.0, 20.0}}, {"E", {1e2, 1e3, 1e4}}, {"r", {0.0, 0.5, 1.0, 2.0}}}},
      {"threshold", {{"bracket_hi", 10.0}, {"tolerance", 1e-5}}},
      {"optimizer", {{"coarse_steps", 16}, {"tolerance", 1e-9}}},
      {"epr", {{"macroscopic_threshold", 1e4}, {"additive_error", 0.0}}},
      {"output", {{"format", "csv"}, {"distributions", false}}},
  };
}

json parse_config_text(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto pos = position_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    if (auto cut = what.find("parse error"); cut != std::string::npos) what = what.substr(cut);
    throw ConfigError(source + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                      ": " + what);
  }
  if (auto v = validate_schema(doc, run_schema())) {
    const auto pos = locate_pointer(text, v->pointer);
    throw ConfigError(source + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                      ": " + (v->pointer.empty() ? "/" : v->pointer) + ": " + v->message);
  }
  return doc;
}

void apply_overrides(json& doc, const Overrides& o) {
  if (o.experiment) doc["experiment"] = *o.experiment;
  if (o.r0) {
    doc["state"]["kind"] = "pair-coherent";
    doc["state"]["r0"] = *o.r0;
  }
  if (o.sigma0) {
    doc["noise"]["sigma0"] = *o.sigma0;
    if (doc.contains("scan")) doc["scan"].erase("sigma0");
  }
  if (o.alpha) doc["scan"]["alpha"] = parse_list(*o.alpha, "--alpha");
  if (o.angles) {
    const auto values = parse_list(*o.angles, "--angles");
    if (values.size() != 4) throw ConfigError("--angles: expected four comma-separated values");
    doc["angles"] = values;
  }
  if (o.n_max) doc["numerics"]["n_max"] = *o.n_max;
  if (o.grid) {
    std::string text = *o.grid;
    for (char& c : text) c = c == ':' ? ',' : c;
    const auto values = parse_list(text, "--grid");
    if (values.size() != 3) throw ConfigError("--grid: expected lo:hi:step");
    doc["numerics"]["grid"] = {{"lo", values[0]}, {"hi", values[1]}, {"step", values[2]}};
  }
  if (o.jobs) doc["jobs"] = *o.jobs;
  if (o.out) doc["output"]["path"] = *o.out;
}

RunConfig resolve_config(const json& user, const std::string& default_output_dir) {
  json doc = default_config();
  doc.merge_patch(user);
  if (auto v = validate_schema(doc, run_schema())) {
    throw ConfigError("config: " + (v->pointer.empty() ? "/" : v->pointer) + ": " + v->message);
  }

  RunConfig c;
  const auto& exp = doc.at("experiment").get_ref<const std::string&>();
  for (auto e : {Experiment::BellScan, Experiment::NoiseThreshold, Experiment::AngleOpt,
                 Experiment::OracleCompare, Experiment::EprSweep}) {
    if (to_string(e) == exp) c.experiment = e;
  }

  const auto& state = doc.at("state");
  c.state_kind = state.value("kind", "pair-coherent");
  c.r0 = state.value("r0", 1.1);
  c.r = state.value("r", 1.0);

  const auto& num = doc.at("numerics");
  c.n_max = num.at("n_max").get<int>();
  c.tail_tol = num.at("tail_tol").get<double>();
  const auto& grid = num.at("grid");
  try {
    c.grid = QuadratureGrid(grid.at("lo").get<double>(), grid.at("hi").get<double>(),
                            grid.at("step").get<double>());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: /numerics/grid: ") + e.what());
  }
  if (!c.grid.symmetric()) {
    throw ConfigError("config: /numerics/grid: grid must be symmetric about 0 with lo = -hi "
                      "and a step dividing the span");
  }
  c.truncations.n_max_signal = num.at("n_max_signal").get<int>();
  c.truncations.tail_tol = c.tail_tol;
  if (num.contains("n_max_lo")) {
    c.truncations.n_max_lo_a = num.at("n_max_lo").get<int>();
    c.truncations.n_max_lo_b = c.truncations.n_max_lo_a;
  }

  const auto& angles = doc.at("angles");
  c.angles = AngleQuad{angles[0].get<double>(), angles[1].get<double>(), angles[2].get<double>(),
                       angles[3].get<double>()};
  if (!c.angles.finite()) throw ConfigError("config: /angles: angles must be finite");

  const auto& noise = doc.at("noise");
  c.noise.sigma0 = noise.at("sigma0").get<double>();
  if (noise.contains("sigma0_b")) c.noise.sigma0_b = noise.at("sigma0_b").get<double>();
  if (noise.contains("E")) c.noise.E = noise.at("E").get<double>();

  const auto& scan = doc.at("scan");
  if (scan.contains("sigma0")) {
    const auto& s = scan.at("sigma0");
    c.sigma0_scan = Sigma0Range{s.at("start").get<double>(), s.at("stop").get<double>(),
                                s.at("step").get<double>()};
  }
  c.alphas = sorted(scan.value("alpha", std::vector<double>{}));
  c.energies = sorted(scan.value("E", std::vector<double>{}));
  c.squeezing = sorted(scan.value("r", std::vector<double>{}));

  c.threshold.bracket_hi = doc.at("threshold").at("bracket_hi").get<double>();
  c.threshold.tolerance = doc.at("threshold").at("tolerance").get<double>();
  c.optimizer.coarse_steps = doc.at("optimizer").at("coarse_steps").get<int>();
  c.optimizer.tolerance = doc.at("optimizer").at("tolerance").get<double>();
  c.macroscopic_threshold = doc.at("epr").at("macroscopic_threshold").get<double>();
  c.additive_error = doc.at("epr").at("additive_error").get<double>();

  const auto& out = doc.at("output");
  c.output_dir = out.value("path", default_output_dir.empty() ? std::string(".") : default_output_dir);
  c.format = out.at("format").get<std::string>();
  c.distributions = out.at("distributions").get<bool>();
  c.jobs = doc.value("jobs", 1);

  c.provenance = doc;
  c.provenance.erase("jobs");
  c.provenance["output"].erase("path");
  return c;
}

RunConfig load_config(const std::string& path, const Overrides& overrides,
                      const std::string& default_output_dir) {
  json user = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    user = parse_config_text(buffer.str(), path);
  }
  apply_overrides(user, overrides);
  return resolve_config(user, default_output_dir);
}

}  // namespace cvbell::cli
