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

// Deterministic stand-ins for the model-backed stages. A flat renderer and
// an exact segmenter are inverse to each other on palette maps, which makes
// every stage of the pipeline checkable against generator ground truth.

#ifndef LAYOUTMORPH_SYNTHETIC_BACKENDS_H_
#define LAYOUTMORPH_SYNTHETIC_BACKENDS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "layoutmorph/backends.h"
#include "layoutmorph/lexicon.h"

namespace layoutmorph {

// Paints every label with its palette color.
RgbImage RenderFlat(const SemanticMap& map);

class FlatRenderer : public MaskToImage {
 public:
  absl::StatusOr<std::vector<RgbImage>> Translate(
      const SemanticMap& map, const TranslationParams& params) override;
};

// Inverts palette colors exactly; instances are 4-connected components.
class ExactSegmenter : public Segmenter {
 public:
  explicit ExactSegmenter(PalettePtr palette) : palette_(std::move(palette)) {}

  absl::StatusOr<SemanticMap> ToMap(const RgbImage& image) const;
  absl::StatusOr<SegmentationResult> Segment(const RgbImage& image) override;

 private:
  PalettePtr palette_;
};

// Fills each 8-connected part of the region with the most frequent color on
// its outer 8-neighbour border. Ties go to the lowest palette label (colors
// outside the palette rank after all palette colors). A region with no
// border, i.e. the whole canvas, takes the background color.
class BackgroundFillInpainter : public Inpainter {
 public:
  explicit BackgroundFillInpainter(PalettePtr palette)
      : palette_(std::move(palette)) {}

  absl::StatusOr<RgbImage> Inpaint(const RgbImage& image,
                                   const BinaryMask& region) override;

 private:
  PalettePtr palette_;
};

struct FaultPolicy {
  double p_omit = 0.0;
  double p_misclassify = 0.0;
  double p_miscount = 0.0;
  // category -> category it gets mistaken for.
  std::map<std::string, std::string> confusion_table;
  uint64_t rng_seed = 0;
  // Restricts fault selection to one category when set.
  std::optional<std::string> target_category;

  absl::Status Validate(const CategoryPalette& palette) const;
  static absl::StatusOr<FaultPolicy> FromJson(std::string_view json);
  std::string ToJson() const;
};

struct SyntheticCaption {
  std::string caption;
  std::vector<FaultRecord> injected;
};

// {"kind", "category", "substitute"?, "true_count", "stated_count"}.
nlohmann::json FaultLogToJson(const std::vector<FaultRecord>& log);
absl::StatusOr<std::vector<FaultRecord>> FaultLogFromJson(
    const nlohmann::json& doc);

// Applies the fault log to true per-category counts, giving the counts the
// caption states.
std::map<std::string, int> ApplyFaults(std::map<std::string, int> counts,
                                       const std::vector<FaultRecord>& log);

// Captions a map from its per-category component counts with the template
// grammar, after applying at most one fault of each kind (omission, then
// misclassification, then miscount), each with its policy probability.
SyntheticCaption CaptionSynthetic(
    const SemanticMap& map, const FaultPolicy& policy,
    const CaptionGrammar& grammar = CaptionGrammar::Default(),
    const Cardinals& cardinals = Cardinals::Default());

// Same as above on explicit counts.
SyntheticCaption CaptionCounts(
    const std::map<std::string, int>& counts, const FaultPolicy& policy,
    const CaptionGrammar& grammar = CaptionGrammar::Default(),
    const Cardinals& cardinals = Cardinals::Default());

// An image-captioning system with known, logged mistakes. Fault sampling
// is seeded from the policy seed and the image content, so the same image
// always gets the same caption.
class FaultInjectingCaptioner : public CaptionService {
 public:
  FaultInjectingCaptioner(PalettePtr palette, FaultPolicy policy);

  absl::StatusOr<std::string> Caption(const RgbImage& image) override;
  absl::StatusOr<CaptionResult> CaptionWithLog(const RgbImage& image) override;

 private:
  ExactSegmenter segmenter_;
  FaultPolicy policy_;
};

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_SYNTHETIC_BACKENDS_H_
