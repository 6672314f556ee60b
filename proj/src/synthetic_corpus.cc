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


#include "layoutmorph/synthetic_corpus.h"

#include <filesystem>

#include "fmt/format.h"
#include "json.hpp"
#include "layoutmorph/codec.h"
#include "layoutmorph/corpus.h"
#include "layoutmorph/seeding.h"
#include "layoutmorph/status.h"
#include "layoutmorph/strings.h"

namespace layoutmorph {

using json = nlohmann::json;
namespace fs = std::filesystem;

absl::Status WriteSyntheticCorpus(const std::string& dir,
                                  const SyntheticCorpusOptions& options,
                                  const PalettePtr& palette) {
  if (options.scenes < 1) {
    return MakeError(ErrorKind::kPrecondition, "scenes must be at least 1");
  }
  if (options.faults) LM_RETURN_IF_ERROR(options.faults->Validate(*palette));
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "images", ec);
  if (ec) return MakeError(ErrorKind::kPrecondition, StrCat(dir, ": ", ec.message()));

  json categories = json::array();
  for (const PaletteEntry& e : palette->entries()) {
    categories.push_back({{"id", int{e.index}}, {"name", e.name}});
  }
  json images = json::array();
  json annotations = json::array();
  json captions = json::array();
  std::string ancestor_log;
  std::optional<FaultInjectingCaptioner> captioner;
  if (options.faults) captioner.emplace(palette, *options.faults);

  int64_t annotation_id = 0;
  int64_t caption_id = 0;
  for (int k = 0; k < options.scenes; ++k) {
    const std::string seed_id = fmt::format("scene{:04d}", k);
    const SyntheticScene scene =
        GenerateScene(options.scene, palette,
                      MixSeeds({options.seed, static_cast<uint64_t>(k)}),
                      seed_id);
    const SceneRecord& r = scene.record;
    const std::string file_name = StrCat("images/", seed_id, ".png");
    LM_RETURN_IF_ERROR(WriteFile((fs::path(dir) / file_name).string(),
                                 EncodePng(r.image)));
    images.push_back({{"id", k},
                      {"file_name", file_name},
                      {"width", r.image.width()},
                      {"height", r.image.height()}});
    for (const ObjectInstance& obj : r.instances) {
      const Rle rle = EncodeRle(obj.mask());
      const BoundingBox& b = obj.bbox();
      annotations.push_back(
          {{"id", annotation_id++},
           {"image_id", k},
           {"category_id", int{*palette->LabelOf(obj.category())}},
           {"segmentation",
            {{"size", {rle.height, rle.width}},
             {"counts", CompressRleCounts(rle.counts)}}},
           {"area", obj.mask().Count()},
           {"bbox", {b.x_min, b.y_min, b.x_max - b.x_min + 1,
                     b.y_max - b.y_min + 1}},
           {"iscrowd", 0}});
    }
    for (const std::string& caption : r.gt_captions) {
      captions.push_back(
          {{"id", caption_id++}, {"image_id", k}, {"caption", caption}});
    }
    if (captioner) {
      LM_ASSIGN_OR_RETURN(CaptionResult result, captioner->CaptionWithLog(r.image));
      ancestor_log += json{{"seed_id", seed_id},
                           {"caption", result.caption},
                           {"injected", FaultLogToJson(result.injected)}}
                          .dump() +
                      "\n";
    }
  }
  const json doc{{"images", images},
                 {"annotations", annotations},
                 {"captions", captions},
                 {"categories", categories}};
  LM_RETURN_IF_ERROR(
      WriteFile((fs::path(dir) / "annotations.json").string(), doc.dump() + "\n"));
  LM_RETURN_IF_ERROR(
      WriteFile((fs::path(dir) / "palette.json").string(), PaletteToJson(*palette)));
  if (options.faults) {
    LM_RETURN_IF_ERROR(WriteFile((fs::path(dir) / "fault_policy.json").string(),
                                 options.faults->ToJson()));
    LM_RETURN_IF_ERROR(WriteFile(
        (fs::path(dir) / "ancestor_faults.jsonl").string(), ancestor_log));
  }
  return absl::OkStatus();
}

}  // namespace layoutmorph
