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

#ifndef LAYOUTMORPH_SCENE_H_
#define LAYOUTMORPH_SCENE_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "layoutmorph/raster.h"
#include "layoutmorph/semantic_map.h"

namespace layoutmorph {

// One object: a non-empty mask, its tight box, and a stacking position
// (0 = closest to the background).
class ObjectInstance {
 public:
  ObjectInstance() = default;

  // Computes the box from the mask. EmptyMask if the mask has no set bit.
  static absl::StatusOr<ObjectInstance> Create(std::string instance_id,
                                               std::string category,
                                               BinaryMask mask, int z_order);

  const std::string& instance_id() const { return instance_id_; }
  const std::string& category() const { return category_; }
  const BinaryMask& mask() const { return mask_; }
  const BoundingBox& bbox() const { return bbox_; }
  int z_order() const { return z_order_; }

  // Same identity, category and z-order with a different mask.
  absl::StatusOr<ObjectInstance> WithMask(BinaryMask mask) const {
    return Create(instance_id_, category_, std::move(mask), z_order_);
  }

  friend bool operator==(const ObjectInstance&,
                         const ObjectInstance&) = default;

 private:
  std::string instance_id_;
  std::string category_;
  BinaryMask mask_;
  BoundingBox bbox_;
  int z_order_ = 0;
};

// One instance per 4-connected component of each nonzero label, in order of
// each component's first pixel in row-major scan. Ids are "obj<k>" and
// z_order is k.
std::vector<ObjectInstance> SplitInstances(const SemanticMap& map);

// Per-category count of 4-connected components.
CandidateSet CountComponents(const SemanticMap& map);

CandidateSet CandidatesFromInstances(const std::vector<ObjectInstance>& objs);

// Paints instances onto `background` in ascending z_order; later ones
// overwrite earlier ones. Ties keep the input order.
SemanticMap Compose(const SemanticMap& background,
                    const std::vector<ObjectInstance>& instances);

struct SceneRecord {
  std::string seed_id;
  RgbImage image;
  SemanticMap semantic_map;
  std::vector<ObjectInstance> instances;
  CandidateSet candidates;
  std::vector<std::string> gt_captions;
};

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_SCENE_H_
