// Copyright 2026 The Pseudoaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pseudoaudit/util/binary_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"

namespace pseudoaudit {

void ByteWriter::PutU32(uint32_t v) {
  for (int i = 0; i < 4; ++i) PutU8(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::PutU64(uint64_t v) {
  for (int i = 0; i < 8; ++i) PutU8(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::PutF32(float v) { PutU32(std::bit_cast<uint32_t>(v)); }

void ByteWriter::PutF64(double v) { PutU64(std::bit_cast<uint64_t>(v)); }

void ByteWriter::PutString(std::string_view s) {
  PutU32(static_cast<uint32_t>(s.size()));
  bytes_.append(s);
}

absl::Status ByteReader::Need(size_t n) const {
  if (bytes_.size() - pos_ < n) {
    return absl::DataLossError(
        absl::StrCat("truncated input: need ", n, " bytes at offset ", pos_));
  }
  return absl::OkStatus();
}

absl::StatusOr<uint8_t> ByteReader::GetU8() {
  if (auto s = Need(1); !s.ok()) return s;
  return static_cast<uint8_t>(bytes_[pos_++]);
}

absl::StatusOr<uint32_t> ByteReader::GetU32() {
  if (auto s = Need(4); !s.ok()) return s;
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<uint8_t>(bytes_[pos_++])) << (8 * i);
  }
  return v;
}

absl::StatusOr<uint64_t> ByteReader::GetU64() {
  if (auto s = Need(8); !s.ok()) return s;
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<uint64_t>(static_cast<uint8_t>(bytes_[pos_++])) << (8 * i);
  }
  return v;
}

absl::StatusOr<float> ByteReader::GetF32() {
  auto v = GetU32();
  if (!v.ok()) return v.status();
  return std::bit_cast<float>(*v);
}

absl::StatusOr<double> ByteReader::GetF64() {
  auto v = GetU64();
  if (!v.ok()) return v.status();
  return std::bit_cast<double>(*v);
}

absl::StatusOr<std::string> ByteReader::GetString() {
  auto len = GetU32();
  if (!len.ok()) return len.status();
  if (auto s = Need(*len); !s.ok()) return s;
  std::string out(bytes_.substr(pos_, *len));
  pos_ += *len;
  return out;
}

absl::Status ByteReader::ExpectRaw(std::string_view expected) {
  if (auto s = Need(expected.size()); !s.ok()) return s;
  if (bytes_.substr(pos_, expected.size()) != expected) {
    return absl::DataLossError(absl::StrCat("bad magic, expected '", std::string(expected), "'"));
  }
  pos_ += expected.size();
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFileBytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path.string()));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) return absl::DataLossError(absl::StrCat("short write to ", path.string()));
  return absl::OkStatus();
}

}  // namespace pseudoaudit
