// Copyright 2026 The bandopt Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bandopt {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (n < 2 for a
/// bound, opt <= 0 for a gap, size mismatch between matrix and ordering).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An ordering that is not a bijection onto {1..n}.
class InvalidOrderingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Vertex index outside [0, n).
class IndexError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The instance generator could not place all sites.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Two sites share a position; the interaction 1/d^6 is undefined.
class CoincidentSitesError : public Error {
 public:
  CoincidentSitesError(std::size_t first, std::size_t second)
      : Error("coincident sites " + std::to_string(first) + " and " +
              std::to_string(second) + " (distance 0)"),
        first_(first),
        second_(second) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// A file that could not be read as the expected schema. `field()` names the
/// offending key ("schema", "sites", ...) or is empty for syntax errors.
class FormatError : public Error {
 public:
  FormatError(std::string field, const std::string& what)
      : Error(field.empty() ? what : "field \"" + field + "\": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Schema tag present but not the version this build understands.
class SchemaVersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bandopt
