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

#include "layoutmorph/mask_extractor.h"

#include <filesystem>

#include "layoutmorph/codec.h"
#include "layoutmorph/morphology.h"
#include "layoutmorph/status.h"
#include "layoutmorph/strings.h"

namespace layoutmorph {
namespace {

const ObjectInstance* FindInstance(const std::vector<ObjectInstance>& objs,
                                   const std::string& id) {
  for (const auto& o : objs) {
    if (o.instance_id() == id) return &o;
  }
  return nullptr;
}

void MaybeDump(const ExtractionConfig& config, const std::string& name,
               const BinaryMask& mask) {
  if (config.debug_dump_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(config.debug_dump_dir, ec);
  // Best effort; a failed dump never fails extraction.
  WriteFile((std::filesystem::path(config.debug_dump_dir) / (name + ".pgm"))
                .string(),
            EncodeMaskPgm(mask))
      .IgnoreError();
}

bool TouchesBox(const BinaryMask& mask, const BoundingBox& box) {
  for (int y = box.y_min; y <= box.y_max; ++y) {
    for (int x = box.x_min; x <= box.x_max; ++x) {
      if (mask.Get(x, y)) return true;
    }
  }
  return false;
}

absl::StatusOr<RgbImage> InpaintIfAny(Inpainter& inpainter,
                                      const RgbImage& image,
                                      const BinaryMask& region) {
  if (region.Empty()) return image;
  return inpainter.Inpaint(image, region);
}

}  // namespace

absl::Status ExtractionConfig::Validate() const {
  if (dilation_kernel < 1 || dilation_kernel % 2 == 0) {
    return MakeError(ErrorKind::kPrecondition,
                     StrCat("dilation_kernel must be odd and >= 1, got ",
                            dilation_kernel));
  }
  if (dilation_iterations < 0 || max_resegment_retries < 0) {
    return MakeError(ErrorKind::kPrecondition,
                     "dilation_iterations and max_resegment_retries must be "
                     ">= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<BinaryMask> BuildInpaintMask(
    const SemanticMap& map, const std::vector<ObjectInstance>& instances,
    const std::set<std::string>& targets,
    const std::optional<std::string>& cur, bool background_pass) {
  if (targets.empty()) {
    return MakeError(ErrorKind::kPrecondition, "no targets");
  }
  if (!background_pass && (!cur.has_value() || !targets.count(*cur))) {
    return MakeError(ErrorKind::kUnknownTarget,
                     StrCat("'", cur.value_or(""), "' is not a target"));
  }
  BinaryMask white(map.width(), map.height());
  for (const std::string& id : targets) {
    const ObjectInstance* obj = FindInstance(instances, id);
    if (obj == nullptr) {
      return MakeError(ErrorKind::kUnknownTarget,
                       StrCat("no instance '", id, "'"));
    }
    if (!obj->mask().SameShape(white)) {
      return MakeError(ErrorKind::kShapeError,
                       StrCat("instance '", id, "' does not match the map"));
    }
    if (!background_pass && id == *cur) continue;
    white = white.Or(obj->mask());
  }
  return white;
}

absl::StatusOr<BinaryMask> DilateBackfill(const BinaryMask& region,
                                          const BinaryMask* protect,
                                          const ExtractionConfig& config) {
  LM_RETURN_IF_ERROR(config.Validate());
  if (protect != nullptr && !protect->SameShape(region)) {
    return MakeError(ErrorKind::kShapeError,
                     "protect mask does not match the region");
  }
  BinaryMask grown =
      Dilate(region, config.dilation_kernel, config.dilation_iterations);
  if (protect != nullptr) grown = grown.Minus(*protect);
  return grown;
}

absl::StatusOr<BinaryMask> ExtractSingle(
    const RgbImage& image, const SemanticMap& map,
    const std::vector<ObjectInstance>& instances,
    const std::set<std::string>& targets, const std::string& cur,
    Inpainter& inpainter, Segmenter& segmenter,
    const ExtractionConfig& config) {
  LM_ASSIGN_OR_RETURN(BinaryMask white,
                      BuildInpaintMask(map, instances, targets, cur, false));
  const ObjectInstance& obj = *FindInstance(instances, cur);
  MaybeDump(config, StrCat(cur, "_inpaint_mask"), white);

  ExtractionConfig pass = config;
  for (int attempt = 0; attempt <= config.max_resegment_retries; ++attempt) {
    pass.dilation_iterations = config.dilation_iterations + attempt;
    LM_ASSIGN_OR_RETURN(BinaryMask region,
                        DilateBackfill(white, &obj.mask(), pass));
    MaybeDump(config, StrCat(cur, "_region_", attempt), region);
    LM_ASSIGN_OR_RETURN(RgbImage repaired,
                        InpaintIfAny(inpainter, image, region));
    LM_ASSIGN_OR_RETURN(SegmentationResult seg, segmenter.Segment(repaired));
    const BinaryMask* best = nullptr;
    size_t best_count = 0;
    for (const ObjectInstance& found : seg.instances) {
      if (found.category() != obj.category() ||
          !found.mask().SameShape(obj.mask()) ||
          !TouchesBox(found.mask(), obj.bbox())) {
        continue;
      }
      const size_t n = found.mask().Count();
      if (n > best_count) {
        best = &found.mask();
        best_count = n;
      }
    }
    if (best != nullptr) {
      MaybeDump(config, StrCat(cur, "_single"), *best);
      return *best;
    }
  }
  return MakeError(ErrorKind::kExtractionFailed,
                   StrCat("no '", obj.category(), "' component for ", cur,
                          " after ", config.max_resegment_retries + 1,
                          " passes"));
}

absl::StatusOr<ExtractionResult> MapSplit(const SceneRecord& scene,
                                          const std::set<std::string>& targets,
                                          Inpainter& inpainter,
                                          Segmenter& segmenter,
                                          const ExtractionConfig& config) {
  LM_RETURN_IF_ERROR(config.Validate());
  if (targets.empty()) {
    return MakeError(ErrorKind::kPrecondition, "no targets");
  }
  ExtractionResult result;
  for (const std::string& id : targets) {
    LM_ASSIGN_OR_RETURN(
        BinaryMask single,
        ExtractSingle(scene.image, scene.semantic_map, scene.instances,
                      targets, id, inpainter, segmenter, config));
    result.singles.emplace(id, std::move(single));
  }
  LM_ASSIGN_OR_RETURN(BinaryMask white,
                      BuildInpaintMask(scene.semantic_map, scene.instances,
                                       targets, std::nullopt, true));
  LM_ASSIGN_OR_RETURN(BinaryMask region,
                      DilateBackfill(white, nullptr, config));
  MaybeDump(config, "background_region", region);
  LM_ASSIGN_OR_RETURN(result.background_image,
                      InpaintIfAny(inpainter, scene.image, region));
  LM_ASSIGN_OR_RETURN(SegmentationResult seg,
                      segmenter.Segment(result.background_image));
  result.background_map = std::move(seg.map);
  return result;
}

absl::StatusOr<std::vector<ObjectInstance>> SinglesAsInstances(
    const SceneRecord& scene, const ExtractionResult& result) {
  std::vector<ObjectInstance> out;
  for (const auto& [id, mask] : result.singles) {
    const ObjectInstance* obj = FindInstance(scene.instances, id);
    if (obj == nullptr) {
      return MakeError(ErrorKind::kUnknownTarget,
                       StrCat("no instance '", id, "'"));
    }
    LM_ASSIGN_OR_RETURN(ObjectInstance single, obj->WithMask(mask));
    out.push_back(std::move(single));
  }
  return out;
}

}  // namespace layoutmorph
