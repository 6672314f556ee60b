// Copyright 2026 The LayoutMorph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Interfaces for the four model-backed stages of the pipeline. Every
// implementation must tolerate concurrent calls.

#ifndef LAYOUTMORPH_BACKENDS_H_
#define LAYOUTMORPH_BACKENDS_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "layoutmorph/raster.h"
#include "layoutmorph/scene.h"
#include "layoutmorph/semantic_map.h"

namespace layoutmorph {

struct SegmentationResult {
  SemanticMap map;
  std::vector<ObjectInstance> instances;
  CandidateSet candidates;
};

struct TranslationParams {
  double guidance_strength = 1.3;
  int diffusion_steps = 250;
  int samples_per_map = 5;

  absl::Status Validate() const;
};

enum class FaultKind { kOmission, kMisclassification, kMiscount };

std::string_view FaultKindName(FaultKind kind);
absl::StatusOr<FaultKind> ParseFaultKind(std::string_view name);

// One fault applied by a synthetic captioner. `substitute` is set for
// misclassifications; the counts describe the category before and after.
struct FaultRecord {
  FaultKind kind = FaultKind::kOmission;
  std::string category;
  std::string substitute;
  int true_count = 0;
  int stated_count = 0;

  friend bool operator==(const FaultRecord&, const FaultRecord&) = default;
};

struct CaptionResult {
  std::string caption;
  // Only synthetic captioners know what they got wrong.
  bool has_fault_log = false;
  std::vector<FaultRecord> injected;
};

class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual absl::StatusOr<SegmentationResult> Segment(
      const RgbImage& image) = 0;
};

class Inpainter {
 public:
  virtual ~Inpainter() = default;
  // Pixels outside `region` must come back bit-identical.
  virtual absl::StatusOr<RgbImage> Inpaint(const RgbImage& image,
                                           const BinaryMask& region) = 0;
};

class MaskToImage {
 public:
  virtual ~MaskToImage() = default;
  // Returns exactly params.samples_per_map images of the map's size.
  virtual absl::StatusOr<std::vector<RgbImage>> Translate(
      const SemanticMap& map, const TranslationParams& params) = 0;
};

class CaptionService {
 public:
  virtual ~CaptionService() = default;
  virtual absl::StatusOr<std::string> Caption(const RgbImage& image) = 0;
  virtual absl::StatusOr<CaptionResult> CaptionWithLog(const RgbImage& image) {
    auto caption = Caption(image);
    if (!caption.ok()) return caption.status();
    return CaptionResult{*std::move(caption), false, {}};
  }
};

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_BACKENDS_H_
