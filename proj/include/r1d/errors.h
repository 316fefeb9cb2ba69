// Copyright 2026 The R1D Authors. All Rights Reserved.
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

#ifndef R1D_ERRORS_H_
#define R1D_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace r1d {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An index or index set falls outside the dimension it addresses.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Input data outside the mathematical domain of an operation
// (negative entries, all-zero matrices, non-finite values).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A numeric parameter outside its declared range (gamma <= 1, k too large,
// infeasible separability bound, ...).
class InvalidParameter : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed input file. line() is one-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A caller broke a documented precondition (e.g. non-unit vector).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// The exhaustive oracle refuses instances above its size cap.
class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

// A metric is undefined for the given input (e.g. zero denominator).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

}  // namespace r1d

#endif  // R1D_ERRORS_H_
