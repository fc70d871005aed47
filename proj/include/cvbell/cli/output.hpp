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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvbell/cli/config.hpp"
#include "cvbell/errors.hpp"

namespace cvbell::cli {

/// An output file could not be created or written.
class OutputError : public Error {
 public:
  using Error::Error;
};

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Writes result files into one directory.  Every CSV starts with '#' lines
/// naming the library version, the experiment, the compact configuration and
/// its SHA-256; every JSON file carries the same fields under "meta".
class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, const RunConfig& config);

  const std::string& config_hash() const { return hash_; }
  std::string csv_header() const;

  /// Numeric table; cells use 12 significant digits.
  std::filesystem::path write_table(const std::string& name,
                                    const std::vector<std::string>& columns,
                                    const std::vector<std::vector<double>>& rows);
  /// Free-form CSV body placed after the header block.
  std::filesystem::path write_csv_body(const std::string& name, const std::string& body);
  std::filesystem::path write_json(const std::string& name, nlohmann::json results);

  const std::vector<std::filesystem::path>& written() const { return written_; }

 private:
  std::filesystem::path put(const std::string& name, const std::string& content);

  std::filesystem::path dir_;
  std::string experiment_;
  std::string config_text_;
  std::string hash_;
  std::vector<std::filesystem::path> written_;
};

}  // namespace cvbell::cli
