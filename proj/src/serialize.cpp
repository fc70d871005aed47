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

#include "cvbell/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cvbell {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void to_json(nlohmann::json& j, const SchmidtDiagonalState& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coeffs) coeffs.push_back({c.real(), c.imag()});
  j = nlohmann::json{{"label", s.label},
                     {"n_max", s.n_max()},
                     {"coeffs", std::move(coeffs)},
                     {"tail_mass", s.tail_mass}};
}

void from_json(const nlohmann::json& j, SchmidtDiagonalState& s) {
  s.label = j.at("label").get<std::string>();
  s.tail_mass = j.value("tail_mass", 0.0);
  s.coeffs.clear();
  for (const auto& c : j.at("coeffs")) {
    if (c.is_number()) {
      s.coeffs.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2) {
      s.coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      throw std::invalid_argument("state JSON: coefficient must be a number or [re, im]");
    }
  }
  if (j.contains("n_max") && j.at("n_max").get<int>() != s.n_max()) {
    throw std::invalid_argument("state JSON: n_max does not match the coefficient count");
  }
}

void to_json(nlohmann::json& j, const AngleQuad& a) {
  j = nlohmann::json{{"theta", a.theta}, {"phi", a.phi}, {"theta_p", a.theta_p}, {"phi_p", a.phi_p}};
}

void to_json(nlohmann::json& j, const BellResult& r) {
  nlohmann::json meta{{"engine", r.meta.engine},
                      {"state", r.meta.state_label},
                      {"n_max", r.meta.n_max},
                      {"sigma_a", r.meta.sigma_a},
                      {"sigma_b", r.meta.sigma_b}};
  if (r.meta.grid) {
    meta["grid"] = {{"lo", (*r.meta.grid)[0]}, {"hi", (*r.meta.grid)[1]}, {"step", (*r.meta.grid)[2]}};
  }
  if (r.meta.alpha) meta["alpha"] = *r.meta.alpha;
  if (r.meta.beta) meta["beta"] = *r.meta.beta;
  j = nlohmann::json{{"S", r.S},
                     {"P_pp_theta_phi", r.joints[0]},
                     {"P_pp_theta_phip", r.joints[1]},
                     {"P_pp_thetap_phi", r.joints[2]},
                     {"P_pp_thetap_phip", r.joints[3]},
                     {"P_plus_A_thetap", r.single_a},
                     {"P_plus_B_phi", r.single_b},
                     {"angles", r.angles},
                     {"meta", std::move(meta)}};
}

void to_json(nlohmann::json& j, const ThresholdResult& r) {
  j = nlohmann::json{{"violation", r.violation},
                     {"S_at_zero", r.s_at_zero},
                     {"sigma0_max", r.sigma0_max},
                     {"E", r.E},
                     {"sigma_photon_max", r.sigma_photon_max},
                     {"evaluations", r.trace.size()}};
}

void to_json(nlohmann::json& j, const AngleOptimum& r) {
  j = nlohmann::json{{"angles", r.angles}, {"S", r.S}, {"evaluations", r.evaluations}};
}

void to_json(nlohmann::json& j, const EprReport& r) {
  j = nlohmann::json{{"r", r.r ? nlohmann::json(*r.r) : nlohmann::json(nullptr)},
                     {"E", r.E},
                     {"delta1", r.delta1},
                     {"delta2", r.delta2},
                     {"delta_x", r.delta_x},
                     {"delta_y", r.delta_y},
                     {"product", r.product},
                     {"bound", r.bound},
                     {"two_abs_Sz", r.sz_scale},
                     {"satisfied", r.satisfied}};
}

void to_json(nlohmann::json& j, const Margins& m) {
  j = nlohmann::json{{"m1", m.m1},
                     {"m2", m.m2},
                     {"threshold", m.threshold},
                     {"macroscopic1", m.macroscopic1},
                     {"macroscopic2", m.macroscopic2}};
}

void to_json(nlohmann::json& j, const CrosscheckReport& r) {
  j = nlohmann::json{{"r", r.r},
                     {"n_max", r.n_max},
                     {"var_xa_fock", r.var_xa_fock},
                     {"var_xa_cov", r.var_xa_cov},
                     {"cov_xx_fock", r.cov_xx_fock},
                     {"cov_xx_cov", r.cov_xx_cov},
                     {"cov_pp_fock", r.cov_pp_fock},
                     {"cov_pp_cov", r.cov_pp_cov},
                     {"max_abs_diff", r.max_abs_diff},
                     {"agree", r.agree}};
}

void to_json(nlohmann::json& j, const ConvergenceRow& r) {
  j = nlohmann::json{{"alpha", r.alpha}, {"distance", r.distance_a}, {"distance_b", r.distance_b}};
}

void write_distribution_csv(std::ostream& out, const JointDifferenceDistribution& dist,
                            double min_probability) {
  out << "i,j,probability\n";
  for (int i = dist.i_min(); i <= dist.i_max(); ++i) {
    for (int j = dist.j_min(); j <= dist.j_max(); ++j) {
      const double p = dist(i, j);
      if (p > min_probability) out << i << ',' << j << ',' << format_number(p) << '\n';
    }
  }
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "alpha,distance,distance_b\n";
  for (const auto& r : rows) {
    out << format_number(r.alpha) << ',' << format_number(r.distance_a) << ','
        << format_number(r.distance_b) << '\n';
  }
}

}  // namespace cvbell
