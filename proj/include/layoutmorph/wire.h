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

// JSON bodies of the backend HTTP protocol. RGB rasters travel as base64
// PNG; label maps and binary masks as base64 P5 with the palette inline.
//
//   POST /v1/segment   {image}
//                   -> {map, palette, instances:[{category, mask, bbox,
//                       z_order}], candidates:{cat: count}}
//   POST /v1/inpaint   {image, region} -> {image}
//   POST /v1/translate {map, palette, guidance_strength, diffusion_steps,
//                       samples} -> {images:[...]}
//   POST /v1/caption   {image, system_id} -> {caption}
//   errors: 429 = throttled; other 4xx/5xx carry {error, detail}.

#ifndef LAYOUTMORPH_WIRE_H_
#define LAYOUTMORPH_WIRE_H_

#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "layoutmorph/backends.h"

namespace layoutmorph::wire {

using Json = nlohmann::json;

inline constexpr char kSegmentPath[] = "/v1/segment";
inline constexpr char kInpaintPath[] = "/v1/inpaint";
inline constexpr char kTranslatePath[] = "/v1/translate";
inline constexpr char kCaptionPath[] = "/v1/caption";

std::string ImageToBase64Png(const RgbImage& image);
absl::StatusOr<RgbImage> ImageFromBase64Png(const Json& value);
std::string MaskToBase64Pgm(const BinaryMask& mask);
absl::StatusOr<BinaryMask> MaskFromBase64Pgm(const Json& value);

Json PaletteEntries(const CategoryPalette& palette);
// Checks that every entry of the inline palette names the same category at
// the same label as `local`. PaletteMismatch otherwise.
absl::Status CheckPaletteCompatible(const Json& entries,
                                    const CategoryPalette& local);

Json SegmentRequest(const RgbImage& image);
absl::StatusOr<RgbImage> ParseSegmentRequest(const Json& body);
Json SegmentResponse(const SegmentationResult& result);
absl::StatusOr<SegmentationResult> ParseSegmentResponse(const Json& body,
                                                        PalettePtr palette);

Json InpaintRequest(const RgbImage& image, const BinaryMask& region);
absl::StatusOr<std::pair<RgbImage, BinaryMask>> ParseInpaintRequest(
    const Json& body);
Json ImageResponse(const RgbImage& image);
absl::StatusOr<RgbImage> ParseImageResponse(const Json& body);

Json TranslateRequest(const SemanticMap& map, const TranslationParams& params);
absl::StatusOr<std::pair<SemanticMap, TranslationParams>>
ParseTranslateRequest(const Json& body, PalettePtr palette);
Json TranslateResponse(const std::vector<RgbImage>& images);
absl::StatusOr<std::vector<RgbImage>> ParseTranslateResponse(const Json& body);

Json CaptionRequest(const RgbImage& image, const std::string& system_id);
absl::StatusOr<std::pair<RgbImage, std::string>> ParseCaptionRequest(
    const Json& body);
Json CaptionResponse(const std::string& caption);
absl::StatusOr<std::string> ParseCaptionResponse(const Json& body);

Json ErrorBody(std::string_view error, std::string_view detail);

}  // namespace layoutmorph::wire

#endif  // LAYOUTMORPH_WIRE_H_
