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

// A small JSON Schema subset: type, enum, properties, required,
// additionalProperties (boolean only), items, minItems, maxItems, minimum,
// exclusiveMinimum, maximum.  Enough for the shipped run-config schema.

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace cvbell::cli {

struct SchemaViolation {
  std::string pointer;  // JSON pointer of the offending value, "" for the root
  std::string message;
};

/// First violation in document order, or nullopt when `instance` conforms.
std::optional<SchemaViolation> validate_schema(const nlohmann::json& instance,
                                               const nlohmann::json& schema);

struct TextPosition {
  int line = 1;
  int column = 1;
};

/// Position of byte `offset` in `text`.
TextPosition position_of_offset(std::string_view text, std::size_t offset);

/// Best-effort position of the value named by `pointer` in the source text:
/// the key of each object step is searched after the previous match.
TextPosition locate_pointer(std::string_view text, const std::string& pointer);

}  // namespace cvbell::cli
