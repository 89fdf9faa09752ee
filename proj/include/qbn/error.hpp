// Copyright 2026 The QBN Compiler Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file error.hpp
 * Exception types shared by every qbn module.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qbn {

/// Base class of all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed BN document text. `offset` is the byte offset reported by the
/// JSON reader (0 when unknown).
class SyntaxError : public Error {
  public:
    SyntaxError(const std::string &what, std::size_t offset)
        : Error(what), offset_(offset) {}
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

  private:
    std::size_t offset_;
};

/// Well-formed text that does not match the BN document schema.
class SchemaError : public Error {
  public:
    using Error::Error;
};

/// A network that violates one or more model invariants. Thrown by
/// parse_network; validate() returns the same list without throwing.
class ValidationError : public SchemaError {
  public:
    ValidationError(const std::string &what, std::vector<std::string> issues)
        : SchemaError(what), issues_(std::move(issues)) {}
    [[nodiscard]] const std::vector<std::string> &issues() const noexcept {
        return issues_;
    }

  private:
    std::vector<std::string> issues_;
};

/// A gate that breaks the circuit structure rules (arity, range, roles).
class StructuralError : public Error {
  public:
    using Error::Error;
};

/// Resource guards: qubit budget, enumeration size, missing ancillas.
class CapacityError : public Error {
  public:
    using Error::Error;
};

} // namespace qbn
