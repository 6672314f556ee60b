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

// Recovers one complete mask per target object, plus a clean background,
// by excising the other targets with an inpainter and re-segmenting.

#ifndef LAYOUTMORPH_MASK_EXTRACTOR_H_
#define LAYOUTMORPH_MASK_EXTRACTOR_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "layoutmorph/backends.h"
#include "layoutmorph/scene.h"

namespace layoutmorph {

struct ExtractionConfig {
  int dilation_kernel = 3;  // odd square side
  int dilation_iterations = 2;
  int max_resegment_retries = 2;
  // When non-empty, intermediate masks are written here as P5 files.
  std::string debug_dump_dir;

  absl::Status Validate() const;
};

struct ExtractionResult {
  // Keyed by instance id, so iteration order is deterministic.
  std::map<std::string, BinaryMask> singles;
  SemanticMap background_map;
  RgbImage background_image;
};

// WHITE (set) pixels are the ones to excise: pixels of target instances,
// excluding `cur` unless this is the background pass.
absl::StatusOr<BinaryMask> BuildInpaintMask(
    const SemanticMap& map, const std::vector<ObjectInstance>& instances,
    const std::set<std::string>& targets,
    const std::optional<std::string>& cur, bool background_pass);

// Grows `region` with the configured square kernel, then clears `protect`.
absl::StatusOr<BinaryMask> DilateBackfill(const BinaryMask& region,
                                          const BinaryMask* protect,
                                          const ExtractionConfig& config);

absl::StatusOr<BinaryMask> ExtractSingle(
    const RgbImage& image, const SemanticMap& map,
    const std::vector<ObjectInstance>& instances,
    const std::set<std::string>& targets, const std::string& cur,
    Inpainter& inpainter, Segmenter& segmenter,
    const ExtractionConfig& config);

absl::StatusOr<ExtractionResult> MapSplit(const SceneRecord& scene,
                                          const std::set<std::string>& targets,
                                          Inpainter& inpainter,
                                          Segmenter& segmenter,
                                          const ExtractionConfig& config);

// The extracted singles as instances carrying their original category and
// z-order, sorted by instance id.
absl::StatusOr<std::vector<ObjectInstance>> SinglesAsInstances(
    const SceneRecord& scene, const ExtractionResult& result);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_MASK_EXTRACTOR_H_
