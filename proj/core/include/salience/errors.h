// Copyright 2026 The Salience Lab Authors.
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

#ifndef SALIENCE_ERRORS_H_
#define SALIENCE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace salience {

// Error hierarchy. The command-line tool maps each family to an exit code:
// ConfigError -> 1, DataError -> 2, NumericalError -> 3.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration or option values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation (bad span, score range, ...).
class DomainError : public DataError {
 public:
  using DataError::DataError;
};

// Malformed corpus/prediction file. Carries the 1-based line and field.
class FormatError : public DataError {
 public:
  FormatError(std::string path, size_t line, std::string field,
              const std::string& what);

  const std::string& path() const { return path_; }
  size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string path_;
  size_t line_;
  std::string field_;
};

// Tensor shapes incompatible with a primitive.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Candidate spans overlap where a single tagged pass is required.
class OverlapError : public DataError {
 public:
  using DataError::DataError;
};

// Tagged sequence would exceed the encoder window.
class OverflowError : public DataError {
 public:
  using DataError::DataError;
};

// Non-finite loss or gradient.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace salience

#endif  // SALIENCE_ERRORS_H_
