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

#include "salience_lab/manifest.h"

#include <openssl/evp.h>

#include <algorithm>
#include <ctime>
#include <filesystem>

#include "salience/errors.h"
#include "salience/io.h"

#ifndef SALIENCE_LAB_VERSION
#define SALIENCE_LAB_VERSION "unknown"
#endif

namespace salience::cli {
namespace {

namespace fs = std::filesystem;

std::string UtcNow() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void HashInto(nlohmann::ordered_json& into, const std::string& path) {
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(path)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) into[f.string()] = Sha256Hex(ReadFile(f.string()));
    return;
  }
  into[path] = Sha256Hex(ReadFile(path));
}

}  // namespace

std::string Sha256Hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

Manifest::Manifest(std::string command, nlohmann::json config)
    : command_(std::move(command)),
      config_(std::move(config)),
      started_at_(UtcNow()) {}

void Manifest::AddInput(const std::string& path) { HashInto(inputs_, path); }

void Manifest::AddOutput(const std::string& path) { HashInto(outputs_, path); }

void Manifest::BeginStage(std::string name) {
  EndStage();
  stage_ = std::move(name);
  stage_start_ = std::chrono::steady_clock::now();
}

void Manifest::EndStage() {
  if (stage_.empty()) return;
  timings_.emplace_back(
      stage_, std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            stage_start_)
                  .count());
  stage_.clear();
}

std::string Manifest::Write(const std::string& out_dir) {
  EndStage();
  nlohmann::ordered_json j;
  j["manifest_version"] = 1;
  j["tool"] = "salience-lab";
  j["tool_version"] = SALIENCE_LAB_VERSION;
  j["command"] = command_;
  j["started_at"] = started_at_;
  j["config"] = config_;
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();
  for (const auto& [stage, secs] : timings_) timings[stage] = secs;
  j["timings_seconds"] = std::move(timings);
  fs::create_directories(out_dir);
  const std::string path = (fs::path(out_dir) / (command_ + ".manifest.json")).string();
  WriteFileAtomic(path, j.dump(2) + "\n");
  return path;
}

}  // namespace salience::cli
