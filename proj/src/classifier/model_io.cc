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

#include "pseudoaudit/classifier/model_io.h"

#include "absl/strings/str_cat.h"
#include "pseudoaudit/util/binary_io.h"
#include "pseudoaudit/util/status_macros.h"

namespace pseudoaudit {
namespace {

constexpr char kMagic[] = "PAFUSE";
constexpr uint32_t kFormatVersion = 1;

}  // namespace

std::string SerializeClassifier(const ClassifierModel& model) {
  ByteWriter w;
  w.PutRaw(kMagic);
  w.PutU32(kFormatVersion);
  w.PutU32(FusingNetwork::kLayerSizes.size());
  for (int size : FusingNetwork::kLayerSizes) w.PutU32(static_cast<uint32_t>(size));
  for (const auto& layer : model.network.layers()) {
    // Row-major: one output unit at a time.
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        w.PutF32(static_cast<float>(layer.weight(r, c)));
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
      w.PutF32(static_cast<float>(layer.bias(r)));
    }
  }
  w.PutF64(model.threshold);
  for (const std::string& id : model.embedding_ids) w.PutString(id);
  return w.bytes();
}

absl::StatusOr<ClassifierModel> DeserializeClassifier(std::string_view bytes) {
  ByteReader r(bytes);
  PA_RETURN_IF_ERROR(r.ExpectRaw(kMagic));
  PA_ASSIGN_OR_RETURN(uint32_t version, r.GetU32());
  if (version != kFormatVersion) {
    return absl::UnimplementedError(absl::StrCat("unsupported classifier format version ", version));
  }
  PA_ASSIGN_OR_RETURN(uint32_t sizes, r.GetU32());
  if (sizes != FusingNetwork::kLayerSizes.size()) {
    return absl::InvalidArgumentError("classifier layer count mismatch");
  }
  for (int expected : FusingNetwork::kLayerSizes) {
    PA_ASSIGN_OR_RETURN(uint32_t size, r.GetU32());
    if (size != static_cast<uint32_t>(expected)) {
      return absl::InvalidArgumentError(
          absl::StrCat("classifier layer size ", size, ", expected ", expected));
    }
  }
  ClassifierModel model;
  for (auto& layer : model.network.mutable_layers()) {
    for (Eigen::Index row = 0; row < layer.weight.rows(); ++row) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        PA_ASSIGN_OR_RETURN(float v, r.GetF32());
        layer.weight(row, c) = v;
      }
    }
    for (Eigen::Index row = 0; row < layer.bias.size(); ++row) {
      PA_ASSIGN_OR_RETURN(float v, r.GetF32());
      layer.bias(row) = v;
    }
  }
  PA_ASSIGN_OR_RETURN(model.threshold, r.GetF64());
  if (!(model.threshold >= 0.0 && model.threshold <= 1.0)) {
    return absl::InvalidArgumentError("classifier threshold outside [0, 1]");
  }
  for (std::string& id : model.embedding_ids) {
    PA_ASSIGN_OR_RETURN(id, r.GetString());
  }
  if (!r.AtEnd()) return absl::InvalidArgumentError("trailing bytes after classifier");
  return model;
}

void RoundWeightsToFloat(FusingNetwork* network) {
  for (auto& layer : network->mutable_layers()) {
    layer.weight = layer.weight.cast<float>().cast<double>();
    layer.bias = layer.bias.cast<float>().cast<double>();
  }
}

absl::Status SaveClassifier(const ClassifierModel& model, const std::filesystem::path& path) {
  return WriteFileBytes(path, SerializeClassifier(model));
}

absl::StatusOr<ClassifierModel> LoadClassifier(const std::filesystem::path& path) {
  PA_ASSIGN_OR_RETURN(std::string bytes, ReadFileBytes(path));
  auto model = DeserializeClassifier(bytes);
  if (!model.ok()) {
    return absl::Status(model.status().code(),
                        absl::StrCat(path.string(), ": ", model.status().message()));
  }
  return model;
}

}  // namespace pseudoaudit
