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


// Reading a COCO-style scene corpus: images, optional instance masks given
// as polygons or RLE, and reference captions.

#ifndef LAYOUTMORPH_CORPUS_H_
#define LAYOUTMORPH_CORPUS_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "layoutmorph/scene.h"

namespace layoutmorph {

struct CorpusScene {
  SceneRecord record;
  // False when the corpus carries no masks for this image; the map,
  // instances and candidates are then left for a segmenter to fill in.
  bool annotated = false;
};

struct Corpus {
  std::vector<CorpusScene> scenes;
  std::vector<std::string> warnings;
};

// Reads `<dir>/annotations.json`; image file names are relative to `dir`.
absl::StatusOr<Corpus> IngestCorpus(const std::string& dir,
                                    const PalettePtr& palette);

// COCO run-length masks: column-major runs, starting with a clear run.
struct Rle {
  int height = 0;
  int width = 0;
  std::vector<uint32_t> counts;
};
Rle EncodeRle(const BinaryMask& mask);
absl::StatusOr<BinaryMask> DecodeRle(const Rle& rle);
// The compact string form used by COCO for "counts".
std::string CompressRleCounts(const std::vector<uint32_t>& counts);
absl::StatusOr<std::vector<uint32_t>> DecompressRleCounts(
    std::string_view text);

// Parses a "segmentation" value: a polygon list, or an RLE object with
// integer or compressed counts.
absl::StatusOr<BinaryMask> DecodeSegmentation(const nlohmann::json& seg,
                                              int width, int height);

// Pixels whose centers fall inside any of the polygons (even-odd rule).
BinaryMask RasterizePolygons(const std::vector<std::vector<double>>& polygons,
                             int width, int height);

// "line L, column C" for a byte offset into `text`.
std::string DescribeOffset(std::string_view text, size_t byte);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_CORPUS_H_
