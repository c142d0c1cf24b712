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

#include "salience/tensor/checkpoint.h"

#include <bit>
#include <cstring>
#include <sstream>
#include <vector>

#include "salience/errors.h"
#include "salience/io.h"

namespace salience {
namespace {

void PutU32(std::ostream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void PutU64(std::ostream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

class Reader {
 public:
  Reader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  void Bytes(char* dst, size_t n, const char* what) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n) {
      throw DataError(source_ + ": truncated checkpoint reading " + what);
    }
  }

  uint64_t U64(const char* what) {
    unsigned char b[8];
    Bytes(reinterpret_cast<char*>(b), 8, what);
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }

  uint32_t U32(const char* what) {
    unsigned char b[4];
    Bytes(reinterpret_cast<char*>(b), 4, what);
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }

  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
};

constexpr uint64_t kMaxNameLength = 1 << 16;
constexpr uint64_t kMaxRank = 8;
constexpr uint64_t kMaxElements = uint64_t{1} << 32;

}  // namespace

void WriteCheckpoint(const ParameterSet& params, std::ostream& out) {
  out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  PutU32(out, kCheckpointVersion);
  PutU64(out, params.size());
  for (const auto& name : params.names()) {
    const Tensor& t = params.Get(name).value();
    PutU64(out, name.size());
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    PutU64(out, t.rank());
    for (size_t d : t.shape()) PutU64(out, d);
    for (double v : t.values()) PutU64(out, std::bit_cast<uint64_t>(v));
  }
}

ParameterSet ReadCheckpoint(std::istream& in, const std::string& source) {
  Reader r(in, source);
  char magic[sizeof(kCheckpointMagic)];
  r.Bytes(magic, sizeof(magic), "magic");
  if (std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) {
    throw DataError(source + ": not a checkpoint (bad magic)");
  }
  const uint32_t version = r.U32("version");
  if (version != kCheckpointVersion) {
    throw DataError(source + ": unsupported checkpoint version " +
                    std::to_string(version));
  }
  const uint64_t count = r.U64("parameter count");
  ParameterSet params;
  for (uint64_t p = 0; p < count; ++p) {
    const uint64_t len = r.U64("name length");
    if (len == 0 || len > kMaxNameLength) {
      throw DataError(source + ": bad parameter name length");
    }
    std::string name(len, '\0');
    r.Bytes(name.data(), len, "name");
    const uint64_t rank = r.U64("rank");
    if (rank == 0 || rank > kMaxRank) {
      throw DataError(source + ": bad rank for '" + name + "'");
    }
    std::vector<size_t> shape(rank);
    uint64_t elements = 1;
    for (auto& d : shape) {
      d = r.U64("dims");
      elements *= d;
      if (d == 0 || elements > kMaxElements) {
        throw DataError(source + ": bad shape for '" + name + "'");
      }
    }
    std::vector<double> data(elements);
    for (double& v : data) v = std::bit_cast<double>(r.U64("values"));
    params.Add(name, Tensor(std::move(shape), std::move(data)));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw DataError(source + ": trailing bytes after checkpoint");
  }
  return params;
}

void SaveCheckpoint(const ParameterSet& params, const std::string& path) {
  std::ostringstream out(std::ios::binary);
  WriteCheckpoint(params, out);
  WriteFileAtomic(path, out.str());
}

ParameterSet LoadCheckpoint(const std::string& path) {
  std::istringstream in(ReadFile(path), std::ios::binary);
  return ReadCheckpoint(in, path);
}

}  // namespace salience
