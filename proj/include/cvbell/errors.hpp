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

#include <stdexcept>
#include <string>

namespace cvbell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Fock-space truncation discards more probability than the configured tolerance.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// The Bell statistic's denominator P+A(theta') + P+B(phi) vanished.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// A joint probability came out below the roundoff tolerance.
class NegativeProbability : public Error {
 public:
  using Error::Error;
};

class SingularCovariance : public Error {
 public:
  using Error::Error;
};

/// A numerical self-check failed (normalization, completeness, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvbell
