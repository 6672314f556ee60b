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

// Random flat-colored scenes with known ground truth.

#ifndef LAYOUTMORPH_SYNTHETIC_SCENE_H_
#define LAYOUTMORPH_SYNTHETIC_SCENE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "layoutmorph/scene.h"

namespace layoutmorph {

struct SyntheticSceneOptions {
  int width = 64;
  int height = 64;
  int min_objects = 1;
  int max_objects = 4;
  int min_size = 5;
  int max_size = 16;
  // Empty background pixels kept between the boxes of separate objects.
  int min_gap = 5;
  // Categories are drawn from the first `category_pool` palette entries
  // (all when 0). Fewer categories make repeated categories likelier.
  int category_pool = 8;
  // Add an occluding partner overlapping one corner of some objects.
  bool occlusion = false;
};

struct SyntheticScene {
  SceneRecord record;
  // Full (pre-occlusion) masks, same order as record.instances.
  std::vector<BinaryMask> full_masks;
  bool has_overlap = false;
};

// Deterministic in (options, palette, seed). Instances are the visible
// parts, z-ordered by drawing order; gt_captions name every category.
SyntheticScene GenerateScene(const SyntheticSceneOptions& options,
                             const PalettePtr& palette, uint64_t seed,
                             std::string seed_id);

// A centrally symmetric blob (rectangle, ellipse or plus) inside the box.
BinaryMask SymmetricShape(int kind, const BoundingBox& box, int width,
                          int height);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_SYNTHETIC_SCENE_H_
