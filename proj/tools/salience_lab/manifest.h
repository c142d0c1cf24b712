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

#ifndef SALIENCE_LAB_MANIFEST_H_
#define SALIENCE_LAB_MANIFEST_H_

#include <chrono>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace salience::cli {

std::string Sha256Hex(std::string_view bytes);

// Records what a command read and wrote. Timestamps live only here, never in
// the reports themselves.
class Manifest {
 public:
  Manifest(std::string command, nlohmann::json config);

  // Files are hashed directly; directories file by file in path order.
  void AddInput(const std::string& path);
  void AddOutput(const std::string& path);

  // Times the stage from this call until the next BeginStage or Write.
  void BeginStage(std::string name);

  // Writes <out_dir>/<command>.manifest.json and returns its path.
  std::string Write(const std::string& out_dir);

 private:
  void EndStage();

  std::string command_;
  nlohmann::json config_;
  std::string started_at_;
  nlohmann::ordered_json inputs_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json outputs_ = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, double>> timings_;
  std::string stage_;
  std::chrono::steady_clock::time_point stage_start_;
};

}  // namespace salience::cli

#endif  // SALIENCE_LAB_MANIFEST_H_
