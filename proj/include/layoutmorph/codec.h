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

// Byte-level formats: binary PGM (P5) for label maps and masks, PNG for RGB
// rasters, the palette JSON sidecar, and content hashing.

#ifndef LAYOUTMORPH_CODEC_H_
#define LAYOUTMORPH_CODEC_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "layoutmorph/raster.h"
#include "layoutmorph/semantic_map.h"

namespace layoutmorph {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> values;
};

std::string EncodePgm(const GrayImage& image);
absl::StatusOr<GrayImage> DecodePgm(std::string_view bytes);

// One byte per label.
std::string EncodeMapPgm(const SemanticMap& map);
absl::StatusOr<SemanticMap> DecodeMapPgm(std::string_view bytes,
                                         PalettePtr palette);

// Set bits are 255, clear bits 0. Decoding treats any nonzero value as set.
std::string EncodeMaskPgm(const BinaryMask& mask);
absl::StatusOr<BinaryMask> DecodeMaskPgm(std::string_view bytes);

std::string EncodePng(const RgbImage& image);
absl::StatusOr<RgbImage> DecodePng(std::string_view bytes);

// {"palette": [{"name": ..., "index": ..., "color": [r, g, b]}, ...]}
std::string PaletteToJson(const CategoryPalette& palette);
absl::StatusOr<CategoryPalette> ParsePaletteJson(std::string_view json);

std::string Sha256Hex(std::string_view bytes);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_CODEC_H_
