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

#ifndef SALIENCE_IO_H_
#define SALIENCE_IO_H_

#include <string>

namespace salience {

// Writes to "<path>.tmp" then renames over `path`; creates parent dirs.
void WriteFileAtomic(const std::string& path, const std::string& contents);
std::string ReadFile(const std::string& path);

}  // namespace salience

#endif  // SALIENCE_IO_H_
