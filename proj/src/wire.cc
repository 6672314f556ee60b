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

#include "layoutmorph/wire.h"

#include "absl/strings/escaping.h"
#include "layoutmorph/strings.h"
#include "layoutmorph/codec.h"
#include "layoutmorph/status.h"

namespace layoutmorph::wire {
namespace {

absl::Status Malformed(std::string_view what) {
  return MakeError(ErrorKind::kBackendError,
                   StrCat("malformed message: ", what));
}

absl::StatusOr<std::string> Unbase64(const Json& value,
                                     std::string_view field) {
  if (!value.is_string()) return Malformed(StrCat(field, " not a string"));
  std::string bytes;
  if (!absl::Base64Unescape(value.get<std::string>(), &bytes)) {
    return Malformed(StrCat(field, " is not base64"));
  }
  return bytes;
}

absl::StatusOr<Json> Field(const Json& body, const char* name) {
  if (!body.is_object() || !body.contains(name)) {
    return Malformed(StrCat("missing field '", name, "'"));
  }
  return body.at(name);
}

std::string MapToBase64Pgm(const SemanticMap& map) {
  return absl::Base64Escape(EncodeMapPgm(map));
}

// Decodes a label map, verifying its inline palette against `palette`.
absl::StatusOr<SemanticMap> MapFromBody(const Json& body, PalettePtr palette) {
  LM_ASSIGN_OR_RETURN(Json entries, Field(body, "palette"));
  LM_RETURN_IF_ERROR(CheckPaletteCompatible(entries, *palette));
  LM_ASSIGN_OR_RETURN(Json map_field, Field(body, "map"));
  LM_ASSIGN_OR_RETURN(std::string bytes, Unbase64(map_field, "map"));
  return DecodeMapPgm(bytes, std::move(palette));
}

}  // namespace

std::string ImageToBase64Png(const RgbImage& image) {
  return absl::Base64Escape(EncodePng(image));
}

absl::StatusOr<RgbImage> ImageFromBase64Png(const Json& value) {
  LM_ASSIGN_OR_RETURN(std::string bytes, Unbase64(value, "image"));
  return DecodePng(bytes);
}

std::string MaskToBase64Pgm(const BinaryMask& mask) {
  return absl::Base64Escape(EncodeMaskPgm(mask));
}

absl::StatusOr<BinaryMask> MaskFromBase64Pgm(const Json& value) {
  LM_ASSIGN_OR_RETURN(std::string bytes, Unbase64(value, "mask"));
  return DecodeMaskPgm(bytes);
}

Json PaletteEntries(const CategoryPalette& palette) {
  return Json::parse(PaletteToJson(palette))["palette"];
}

absl::Status CheckPaletteCompatible(const Json& entries,
                                    const CategoryPalette& local) {
  auto remote = ParsePaletteJson(Json{{"palette", entries}}.dump());
  if (!remote.ok()) return remote.status();
  for (const PaletteEntry& e : remote->entries()) {
    auto label = local.LabelOf(e.name);
    if (!label.has_value() || *label != e.index) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("remote category '", e.name, "' at label ",
                                    int{e.index},
                                    " does not match the local palette"));
    }
  }
  return absl::OkStatus();
}

Json SegmentRequest(const RgbImage& image) {
  return {{"image", ImageToBase64Png(image)}};
}

absl::StatusOr<RgbImage> ParseSegmentRequest(const Json& body) {
  LM_ASSIGN_OR_RETURN(Json image, Field(body, "image"));
  return ImageFromBase64Png(image);
}

Json SegmentResponse(const SegmentationResult& result) {
  Json instances = Json::array();
  for (const ObjectInstance& obj : result.instances) {
    const BoundingBox& b = obj.bbox();
    instances.push_back({{"category", obj.category()},
                         {"mask", MaskToBase64Pgm(obj.mask())},
                         {"bbox",
                          {{"x_min", b.x_min},
                           {"x_max", b.x_max},
                           {"y_min", b.y_min},
                           {"y_max", b.y_max}}},
                         {"z_order", obj.z_order()}});
  }
  return {{"map", MapToBase64Pgm(result.map)},
          {"palette", PaletteEntries(result.map.palette())},
          {"instances", instances},
          {"candidates", result.candidates}};
}

absl::StatusOr<SegmentationResult> ParseSegmentResponse(const Json& body,
                                                        PalettePtr palette) {
  SegmentationResult result;
  LM_ASSIGN_OR_RETURN(result.map, MapFromBody(body, palette));
  LM_ASSIGN_OR_RETURN(Json instances, Field(body, "instances"));
  if (!instances.is_array()) return Malformed("instances not an array");
  int k = 0;
  for (const Json& item : instances) {
    if (!item.is_object() || !item.contains("category") ||
        !item["category"].is_string() || !item.contains("z_order") ||
        !item["z_order"].is_number_integer()) {
      return Malformed("instance entry");
    }
    const std::string category = item["category"].get<std::string>();
    if (!palette->HasCategory(category)) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("unknown category '", category, "'"));
    }
    LM_ASSIGN_OR_RETURN(Json mask_field, Field(item, "mask"));
    LM_ASSIGN_OR_RETURN(BinaryMask mask, MaskFromBase64Pgm(mask_field));
    if (mask.width() != result.map.width() ||
        mask.height() != result.map.height()) {
      return MakeError(ErrorKind::kShapeError, "instance mask size");
    }
    auto obj = ObjectInstance::Create(StrCat("obj", k++), category,
                                      std::move(mask),
                                      item["z_order"].get<int>());
    if (!obj.ok()) return Malformed(std::string(obj.status().message()));
    result.instances.push_back(*std::move(obj));
  }
  LM_ASSIGN_OR_RETURN(Json candidates, Field(body, "candidates"));
  if (!candidates.is_object()) return Malformed("candidates not an object");
  for (const auto& [name, count] : candidates.items()) {
    if (!count.is_number_integer() || count.get<int>() < 1) {
      return Malformed("candidate count");
    }
    if (!palette->HasCategory(name)) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("unknown candidate '", name, "'"));
    }
    result.candidates[name] = count.get<int>();
  }
  return result;
}

Json InpaintRequest(const RgbImage& image, const BinaryMask& region) {
  return {{"image", ImageToBase64Png(image)},
          {"region", MaskToBase64Pgm(region)}};
}

absl::StatusOr<std::pair<RgbImage, BinaryMask>> ParseInpaintRequest(
    const Json& body) {
  LM_ASSIGN_OR_RETURN(Json image_field, Field(body, "image"));
  LM_ASSIGN_OR_RETURN(Json region_field, Field(body, "region"));
  LM_ASSIGN_OR_RETURN(RgbImage image, ImageFromBase64Png(image_field));
  LM_ASSIGN_OR_RETURN(BinaryMask region, MaskFromBase64Pgm(region_field));
  return std::make_pair(std::move(image), std::move(region));
}

Json ImageResponse(const RgbImage& image) {
  return {{"image", ImageToBase64Png(image)}};
}

absl::StatusOr<RgbImage> ParseImageResponse(const Json& body) {
  LM_ASSIGN_OR_RETURN(Json image, Field(body, "image"));
  return ImageFromBase64Png(image);
}

Json TranslateRequest(const SemanticMap& map, const TranslationParams& params) {
  return {{"map", MapToBase64Pgm(map)},
          {"palette", PaletteEntries(map.palette())},
          {"guidance_strength", params.guidance_strength},
          {"diffusion_steps", params.diffusion_steps},
          {"samples", params.samples_per_map}};
}

absl::StatusOr<std::pair<SemanticMap, TranslationParams>>
ParseTranslateRequest(const Json& body, PalettePtr palette) {
  LM_ASSIGN_OR_RETURN(SemanticMap map, MapFromBody(body, std::move(palette)));
  TranslationParams params;
  try {
    params.guidance_strength = body.at("guidance_strength").get<double>();
    params.diffusion_steps = body.at("diffusion_steps").get<int>();
    params.samples_per_map = body.at("samples").get<int>();
  } catch (const Json::exception& e) {
    return Malformed(e.what());
  }
  return std::make_pair(std::move(map), params);
}

Json TranslateResponse(const std::vector<RgbImage>& images) {
  Json list = Json::array();
  for (const auto& image : images) list.push_back(ImageToBase64Png(image));
  return {{"images", list}};
}

absl::StatusOr<std::vector<RgbImage>> ParseTranslateResponse(const Json& body) {
  LM_ASSIGN_OR_RETURN(Json list, Field(body, "images"));
  if (!list.is_array()) return Malformed("images not an array");
  std::vector<RgbImage> images;
  for (const Json& item : list) {
    LM_ASSIGN_OR_RETURN(RgbImage image, ImageFromBase64Png(item));
    images.push_back(std::move(image));
  }
  return images;
}

Json CaptionRequest(const RgbImage& image, const std::string& system_id) {
  return {{"image", ImageToBase64Png(image)}, {"system_id", system_id}};
}

absl::StatusOr<std::pair<RgbImage, std::string>> ParseCaptionRequest(
    const Json& body) {
  LM_ASSIGN_OR_RETURN(Json image_field, Field(body, "image"));
  LM_ASSIGN_OR_RETURN(RgbImage image, ImageFromBase64Png(image_field));
  std::string system_id;
  if (body.contains("system_id") && body["system_id"].is_string()) {
    system_id = body["system_id"].get<std::string>();
  }
  return std::make_pair(std::move(image), std::move(system_id));
}

Json CaptionResponse(const std::string& caption) {
  return {{"caption", caption}};
}

absl::StatusOr<std::string> ParseCaptionResponse(const Json& body) {
  LM_ASSIGN_OR_RETURN(Json caption, Field(body, "caption"));
  if (!caption.is_string() || caption.get<std::string>().empty()) {
    return Malformed("caption must be a non-empty string");
  }
  return caption.get<std::string>();
}

Json ErrorBody(std::string_view error, std::string_view detail) {
  return {{"error", error}, {"detail", detail}};
}

}  // namespace layoutmorph::wire
