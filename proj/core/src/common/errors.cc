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

#include "salience/errors.h"

#include <utility>

namespace salience {

FormatError::FormatError(std::string path, size_t line, std::string field,
                         const std::string& what)
    : DataError(path + ":" + std::to_string(line) + ": field '" + field +
                "': " + what),
      path_(std::move(path)),
      line_(line),
      field_(std::move(field)) {}

}  // namespace salience
