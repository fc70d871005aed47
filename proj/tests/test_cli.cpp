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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cvbell/cli/config.hpp"
#include "cvbell/cli/output.hpp"
#include "cvbell/cli/runner.hpp"
#include "cvbell/cli/schema.hpp"

namespace cvbell::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("cvbell_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Data rows of a CSV written by ArtifactWriter: skips '#' lines and the column header.
std::vector<std::vector<double>> data_rows(const fs::path& p) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

RunConfig config_from(json user, const fs::path& out) {
  user["output"]["path"] = out.string();
  return resolve_config(user, "");
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Schema, RejectsUnknownKeysAndBadValues) {
  const json schema = json::parse(R"({"type":"object","additionalProperties":false,
    "properties":{"a":{"type":"integer","minimum":1},"b":{"type":"string","enum":["x","y"]},
    "c":{"type":"array","items":{"type":"number"},"maxItems":2}}})");
  EXPECT_FALSE(validate_schema(json::parse(R"({"a":2,"b":"x","c":[1,2.5]})"), schema));
  EXPECT_EQ(validate_schema(json::parse(R"({"z":1})"), schema)->pointer, "/z");
  EXPECT_EQ(validate_schema(json::parse(R"({"a":0})"), schema)->pointer, "/a");
  EXPECT_EQ(validate_schema(json::parse(R"({"a":1.5})"), schema)->pointer, "/a");
  EXPECT_EQ(validate_schema(json::parse(R"({"b":"q"})"), schema)->pointer, "/b");
  EXPECT_EQ(validate_schema(json::parse(R"({"c":[1,"s"]})"), schema)->pointer, "/c/1");
  EXPECT_EQ(validate_schema(json::parse(R"({"c":[1,2,3]})"), schema)->pointer, "/c");
  EXPECT_TRUE(validate_schema(json::parse("[]"), schema));
}

TEST(Schema, LocatesPointersInSourceText) {
  const std::string text = "{\n  \"numerics\": {\n    \"n_max\": -1\n  }\n}\n";
  const auto pos = locate_pointer(text, "/numerics/n_max");
  EXPECT_EQ(pos.line, 3);
  EXPECT_EQ(pos.column, 5);
  EXPECT_EQ(position_of_offset("ab\ncd", 4).line, 2);
}

TEST(Config, ParseErrorsAreLineAnchored) {
  try {
    parse_config_text("{\n  \"experiment\": \"bell-scan\",\n  \"state\": { \"kind\": }\n}", "cfg.json");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("cfg.json:3:", 0), 0u) << e.what();
  }
  try {
    parse_config_text("{\n  \"experiment\": \"bell-scan\",\n  \"bogus\": 1\n}", "cfg.json");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("cfg.json:3:3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("unknown key"), std::string::npos);
  }
}

TEST(Config, DefaultsAndOverrides) {
  json doc = json::object();
  Overrides o;
  o.r0 = 0.9;
  o.grid = "-6:6:0.02";
  o.angles = "0,-0.5,1,-1";
  o.n_max = 40;
  o.jobs = 3;
  apply_overrides(doc, o);
  const auto c = resolve_config(doc, "somewhere");
  EXPECT_EQ(c.experiment, Experiment::BellScan);
  EXPECT_EQ(c.r0, 0.9);
  EXPECT_EQ(c.n_max, 40);
  EXPECT_EQ(c.grid.step(), 0.02);
  EXPECT_EQ(c.angles.phi, -0.5);
  EXPECT_EQ(c.jobs, 3);
  EXPECT_EQ(c.output_dir, "somewhere");
  EXPECT_FALSE(c.provenance.contains("jobs"));
  EXPECT_FALSE(c.provenance["output"].contains("path"));
  EXPECT_EQ(c.alphas, (std::vector<double>{5, 10, 20}));
}

TEST(Config, RejectsAsymmetricGridAndBadOverrides) {
  json doc = {{"numerics", {{"grid", {{"lo", -8}, {"hi", 7}, {"step", 0.01}}}}}};
  EXPECT_THROW(resolve_config(doc, ""), ConfigError);
  json empty = json::object();
  Overrides o;
  o.angles = "1,2,3";
  EXPECT_THROW(apply_overrides(empty, o), ConfigError);
  Overrides n;
  n.n_max = -3;
  apply_overrides(empty, n);
  EXPECT_THROW(resolve_config(empty, ""), ConfigError);
}

TEST(Config, Sigma0RangeIsInclusive) {
  EXPECT_EQ((Sigma0Range{0.0, 1.0, 0.02}).values().size(), 51u);
  EXPECT_TRUE((Sigma0Range{1.0, 0.5, 0.1}).values().empty());
}

TEST(Run, BellScanIsReproducibleAndIndependentOfJobs) {
  const json user = {{"scan", {{"sigma0", {{"start", 0.0}, {"stop", 0.4}, {"step", 0.1}}}}},
                     {"numerics", {{"grid", {{"lo", -8}, {"hi", 8}, {"step", 0.02}}}}}};
  auto c1 = config_from(user, scratch_dir("repro1"));
  auto c2 = config_from(user, scratch_dir("repro2"));
  c2.jobs = 3;
  run(c1);
  run(c2);
  const auto a = slurp(fs::path(c1.output_dir) / "bell_scan.csv");
  EXPECT_EQ(a, slurp(fs::path(c2.output_dir) / "bell_scan.csv"));
  EXPECT_NE(a.find("# config_sha256: " + sha256_hex(c1.provenance.dump())), std::string::npos);
  EXPECT_NE(a.find("# cvbell "), std::string::npos);
  const auto rows = data_rows(fs::path(c1.output_dir) / "bell_scan.csv");
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_GT(rows[0][1], 1.0);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_GT(rows[k][0], rows[k - 1][0]);
}

TEST(Run, ThresholdRowsScaleLinearly) {
  const json user = {{"experiment", "noise-threshold"}, {"scan", {{"E", {1e4, 1e2, 1e3}}}}};
  const auto c = config_from(user, scratch_dir("fig3b"));
  run(c);
  const auto rows = data_rows(fs::path(c.output_dir) / "fig3b.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0][0], 1e2);
  EXPECT_EQ(rows[2][0], 1e4);
  for (const auto& r : rows) EXPECT_NEAR(r[1] / r[0], rows[0][1] / rows[0][0], 1e-9 * rows[0][1] / rows[0][0]);
}

TEST(Run, EmptyScanWritesHeaderOnly) {
  const json user = {{"experiment", "oracle-compare"}, {"scan", {{"alpha", json::array()}}}};
  const auto c = config_from(user, scratch_dir("empty"));
  run(c);
  const auto text = slurp(fs::path(c.output_dir) / "fig3a.csv");
  EXPECT_TRUE(data_rows(fs::path(c.output_dir) / "fig3a.csv").empty());
  EXPECT_NE(text.find("alpha,S_exact\n"), std::string::npos);
}

TEST(Run, OracleCompareWritesAllTables) {
  const json user = {{"experiment", "oracle-compare"}, {"scan", {{"alpha", {10, 5}}}},
                     {"output", {{"format", "both"}, {"distributions", true}}}};
  const auto c = config_from(user, scratch_dir("oracle"));
  const auto summary = run(c);
  const fs::path dir = c.output_dir;
  for (const char* f : {"oracle_compare.csv", "oracle_compare.json", "fig3a.csv", "convergence.csv",
                        "distribution_alpha_5.csv", "distribution_alpha_10.csv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const auto rows = data_rows(dir / "oracle_compare.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], 5.0);
  EXPECT_NEAR(rows[0][3], std::abs(rows[0][1] - rows[0][2]), 1e-11);
  const auto doc = json::parse(slurp(dir / "oracle_compare.json"));
  EXPECT_EQ(doc["meta"]["config_sha256"], sha256_hex(c.provenance.dump()));
  double total = 0;
  for (const auto& r : data_rows(dir / "distribution_alpha_5.csv")) total += r[2];
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(Run, EprSweepAndAngleOpt) {
  const auto e = config_from({{"experiment", "epr-sweep"}, {"scan", {{"r", {0, 1}}, {"E", {100}}}}}, scratch_dir("epr"));
  run(e);
  const auto rows = data_rows(fs::path(e.output_dir) / "epr_sweep.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][8], 0.0);
  EXPECT_EQ(rows[1][8], 1.0);

  const auto a = config_from({{"experiment", "angle-opt"}, {"optimizer", {{"coarse_steps", 8}}},
                              {"numerics", {{"grid", {{"lo", -8}, {"hi", 8}, {"step", 0.02}}}}}},
                             scratch_dir("angles"));
  run(a);
  const auto best = data_rows(fs::path(a.output_dir) / "angle_opt.csv");
  ASSERT_EQ(best.size(), 1u);
  EXPECT_GE(best[0][4], best[0][5]);
}

TEST(Run, ExitCodesByErrorKind) {
  EXPECT_EQ(exit_code_for(ConfigError("x")), 1);
  EXPECT_EQ(exit_code_for(TruncationError("x")), 2);
  EXPECT_EQ(exit_code_for(NegativeProbability("x")), 3);
  EXPECT_EQ(exit_code_for(ConsistencyError("x")), 3);
  EXPECT_EQ(exit_code_for(OutputError("x")), 4);
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(CVBELL_BELL_SCAN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitStatuses) {
  const auto dir = scratch_dir("binary");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << "{\n  \"state\": {\n";
  std::ofstream(dir / "tmsv.json") << R"({"state": {"kind": "two-mode-squeezed", "r": 2.0}})";
  EXPECT_EQ(run_binary("--config " + (dir / "bad.json").string() + " --out " + dir.string()), 1);
  EXPECT_EQ(run_binary("--config " + (dir / "tmsv.json").string() + " --out " + dir.string()), 2);
  EXPECT_EQ(run_binary("--nosuchflag"), 1);
  EXPECT_EQ(run_binary("--sigma0 0.1 --grid -8:8:0.02 --out " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "bell_scan.csv"));
}

TEST(Binary, OutputDirectoryFromEnvironment) {
  const auto dir = scratch_dir("envdir");
  const std::string cmd = "CVBELL_OUTPUT_DIR=" + dir.string() + " " + CVBELL_BELL_SCAN +
                          " --experiment epr-sweep >/dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir / "epr_sweep.csv"));
}

}  // namespace
}  // namespace cvbell::cli
