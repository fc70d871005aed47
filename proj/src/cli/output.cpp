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

#include "cvbell/cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "cvbell/serialize.hpp"
#include "cvbell/version.hpp"

namespace cvbell::cli {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw OutputError("sha256 digest failed");
  }
  std::string hex;
  char byte[3];
  for (unsigned int k = 0; k < length; ++k) {
    std::snprintf(byte, sizeof byte, "%02x", digest[k]);
    hex += byte;
  }
  return hex;
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir, const RunConfig& config)
    : dir_(std::move(dir)),
      experiment_(to_string(config.experiment)),
      config_text_(config.provenance.dump()),
      hash_(sha256_hex(config_text_)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw OutputError(dir_.string() + ": cannot create output directory: " + ec.message());
}

std::string ArtifactWriter::csv_header() const {
  std::string out;
  out += "# cvbell " + std::string(kVersion) + "\n";
  out += "# experiment: " + experiment_ + "\n";
  out += "# config: " + config_text_ + "\n";
  out += "# config_sha256: " + hash_ + "\n";
  return out;
}

std::filesystem::path ArtifactWriter::write_table(const std::string& name,
                                                  const std::vector<std::string>& columns,
                                                  const std::vector<std::vector<double>>& rows) {
  std::ostringstream body;
  for (std::size_t k = 0; k < columns.size(); ++k) body << (k ? "," : "") << columns[k];
  body << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) body << (k ? "," : "") << format_number(row[k]);
    body << '\n';
  }
  return write_csv_body(name, body.str());
}

std::filesystem::path ArtifactWriter::write_csv_body(const std::string& name,
                                                     const std::string& body) {
  return put(name, csv_header() + body);
}

std::filesystem::path ArtifactWriter::write_json(const std::string& name, nlohmann::json results) {
  nlohmann::json doc{{"meta",
                      {{"version", kVersion},
                       {"experiment", experiment_},
                       {"config", nlohmann::json::parse(config_text_)},
                       {"config_sha256", hash_}}},
                     {"results", std::move(results)}};
  return put(name, doc.dump(2) + "\n");
}

std::filesystem::path ArtifactWriter::put(const std::string& name, const std::string& content) {
  const auto path = dir_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError(path.string() + ": cannot open for writing");
  out << content;
  out.close();
  if (!out) throw OutputError(path.string() + ": write failed");
  written_.push_back(path);
  return path;
}

}  // namespace cvbell::cli
