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

#ifndef PSEUDOAUDIT_UTIL_BINARY_IO_H_
#define PSEUDOAUDIT_UTIL_BINARY_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace pseudoaudit {

// Appends little-endian encoded values to a byte string, independent of the
// host byte order.
class ByteWriter {
 public:
  void PutU8(uint8_t v) { bytes_.push_back(static_cast<char>(v)); }
  void PutU32(uint32_t v);
  void PutU64(uint64_t v);
  void PutF32(float v);
  void PutF64(double v);
  void PutString(std::string_view s);  // u32 length prefix
  void PutRaw(std::string_view s) { bytes_.append(s); }

  const std::string& bytes() const { return bytes_; }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  absl::StatusOr<uint8_t> GetU8();
  absl::StatusOr<uint32_t> GetU32();
  absl::StatusOr<uint64_t> GetU64();
  absl::StatusOr<float> GetF32();
  absl::StatusOr<double> GetF64();
  absl::StatusOr<std::string> GetString();
  absl::Status ExpectRaw(std::string_view expected);

  bool AtEnd() const { return pos_ == bytes_.size(); }
  size_t position() const { return pos_; }

 private:
  absl::Status Need(size_t n) const;

  std::string_view bytes_;
  size_t pos_ = 0;
};

absl::StatusOr<std::string> ReadFileBytes(const std::filesystem::path& path);
absl::Status WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace pseudoaudit

#endif  // PSEUDOAUDIT_UTIL_BINARY_IO_H_
