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

#include "cvbell/cli/schema.hpp"

#include <algorithm>
#include <cmath>

namespace cvbell::cli {
namespace {

using nlohmann::json;

bool has_type(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "number") return value.is_number();
  if (type == "integer") {
    if (value.is_number_integer()) return true;
    if (!value.is_number_float()) return false;
    const double d = value.get<double>();
    return std::isfinite(d) && d == std::floor(d);
  }
  if (type == "null") return value.is_null();
  return false;
}

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::optional<SchemaViolation> check(const json& value, const json& schema,
                                     const std::string& where) {
  auto fail = [&](std::string msg) { return SchemaViolation{where, std::move(msg)}; };

  if (auto it = schema.find("type"); it != schema.end()) {
    const auto type = it->get<std::string>();
    if (!has_type(value, type)) return fail("expected " + type + ", got " + value.type_name());
  }
  if (auto it = schema.find("enum"); it != schema.end()) {
    if (std::find(it->begin(), it->end(), value) == it->end()) {
      return fail("value " + value.dump() + " is not one of " + it->dump());
    }
  }
  if (value.is_number()) {
    const double d = value.get<double>();
    if (auto it = schema.find("minimum"); it != schema.end() && d < it->get<double>()) {
      return fail("must be >= " + it->dump());
    }
    if (auto it = schema.find("exclusiveMinimum"); it != schema.end() && d <= it->get<double>()) {
      return fail("must be > " + it->dump());
    }
    if (auto it = schema.find("maximum"); it != schema.end() && d > it->get<double>()) {
      return fail("must be <= " + it->dump());
    }
  }
  if (value.is_array()) {
    if (auto it = schema.find("minItems"); it != schema.end() && value.size() < it->get<std::size_t>()) {
      return fail("needs at least " + it->dump() + " items");
    }
    if (auto it = schema.find("maxItems"); it != schema.end() && value.size() > it->get<std::size_t>()) {
      return fail("allows at most " + it->dump() + " items");
    }
    if (auto it = schema.find("items"); it != schema.end()) {
      for (std::size_t k = 0; k < value.size(); ++k) {
        if (auto v = check(value[k], *it, where + "/" + std::to_string(k))) return v;
      }
    }
  }
  if (value.is_object()) {
    if (auto it = schema.find("required"); it != schema.end()) {
      for (const auto& key : *it) {
        if (!value.contains(key.get<std::string>())) {
          return fail("missing required key \"" + key.get<std::string>() + "\"");
        }
      }
    }
    const json* props = nullptr;
    if (auto it = schema.find("properties"); it != schema.end()) props = &*it;
    const bool closed = schema.value("additionalProperties", true) == false;
    for (const auto& [key, child] : value.items()) {
      const std::string path = where + "/" + escape_token(key);
      if (props && props->contains(key)) {
        if (auto v = check(child, props->at(key), path)) return v;
      } else if (closed) {
        return SchemaViolation{path, "unknown key \"" + key + "\""};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<SchemaViolation> validate_schema(const nlohmann::json& instance,
                                               const nlohmann::json& schema) {
  return check(instance, schema, "");
}

TextPosition position_of_offset(std::string_view text, std::size_t offset) {
  TextPosition pos;
  offset = std::min(offset, text.size());
  for (std::size_t k = 0; k < offset; ++k) {
    if (text[k] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

TextPosition locate_pointer(std::string_view text, const std::string& pointer) {
  std::size_t at = 0;
  std::size_t start = 1;
  while (start <= pointer.size() && !pointer.empty()) {
    std::size_t end = pointer.find('/', start);
    if (end == std::string::npos) end = pointer.size();
    std::string token = pointer.substr(start, end - start);
    start = end + 1;
    if (!token.empty() && std::all_of(token.begin(), token.end(), ::isdigit)) continue;
    for (std::size_t p; (p = token.find("~1")) != std::string::npos;) token.replace(p, 2, "/");
    for (std::size_t p; (p = token.find("~0")) != std::string::npos;) token.replace(p, 2, "~");
    const auto found = text.find("\"" + token + "\"", at);
    if (found == std::string_view::npos) break;
    at = found;
  }
  return position_of_offset(text, at);
}

}  // namespace cvbell::cli
