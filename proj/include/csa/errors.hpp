// Copyright 2026 The csa-measure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace csa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on qubit count, orbital count or tensor shape.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a documented invariant (symmetry, bounds, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Accumulated Pauli sum kept an imaginary coefficient above tolerance.
class NonHermitianError : public Error {
 public:
  using Error::Error;
};

/// Malformed text or document input. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

  /// Same line, message prefixed by `context`.
  ParseError with_context(const std::string& context) const {
    ParseError e(*this);
    static_cast<Error&>(e) = Error(context + ": " + what());
    return e;
  }

 private:
  std::size_t line_;
};

/// An iterative solver hit its iteration cap before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_value)
      : Error(what), best_value_(best_value) {}
  /// Best objective / residual reached before giving up.
  double best_value() const { return best_value_; }

 private:
  double best_value_;
};

/// A decomposition could not reach the requested residual tolerance.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

}  // namespace csa
