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


#include "layoutmorph/corpus.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "layoutmorph/codec.h"
#include "layoutmorph/status.h"
#include "layoutmorph/strings.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

absl::Status Bad(const std::string& file, std::string_view what) {
  return MakeError(ErrorKind::kCorpusError, StrCat(file, ": ", what));
}

std::string Where(const char* array, size_t i) {
  return StrCat(array, "[", i, "]");
}

struct ImageEntry {
  int64_t id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;
};

}  // namespace

std::string DescribeOffset(std::string_view text, size_t byte) {
  byte = std::min(byte, text.size());
  size_t line = 1;
  size_t column = 1;
  for (size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return StrCat("line ", line, ", column ", column);
}

Rle EncodeRle(const BinaryMask& mask) {
  Rle rle{mask.height(), mask.width(), {}};
  bool current = false;
  uint32_t run = 0;
  for (int x = 0; x < mask.width(); ++x) {
    for (int y = 0; y < mask.height(); ++y) {
      if (mask.Get(x, y) != current) {
        rle.counts.push_back(run);
        run = 0;
        current = !current;
      }
      ++run;
    }
  }
  rle.counts.push_back(run);
  return rle;
}

absl::StatusOr<BinaryMask> DecodeRle(const Rle& rle) {
  if (rle.width < 1 || rle.height < 1) {
    return MakeError(ErrorKind::kShapeError, "RLE size must be positive");
  }
  uint64_t total = 0;
  for (uint32_t c : rle.counts) total += c;
  if (total != static_cast<uint64_t>(rle.width) * rle.height) {
    return MakeError(ErrorKind::kShapeError,
                     StrCat("RLE covers ", total, " pixels, expected ",
                            rle.width * rle.height));
  }
  BinaryMask mask(rle.width, rle.height);
  uint64_t pos = 0;
  bool value = false;
  for (uint32_t c : rle.counts) {
    if (value) {
      for (uint64_t k = pos; k < pos + c; ++k) {
        mask.Set(static_cast<int>(k / rle.height),
                 static_cast<int>(k % rle.height));
      }
    }
    pos += c;
    value = !value;
  }
  return mask;
}

std::string CompressRleCounts(const std::vector<uint32_t>& counts) {
  std::string out;
  for (size_t i = 0; i < counts.size(); ++i) {
    int64_t x = counts[i];
    if (i > 2) x -= counts[i - 2];
    bool more = true;
    while (more) {
      int64_t c = x & 0x1f;
      x >>= 5;
      more = (c & 0x10) ? x != -1 : x != 0;
      if (more) c |= 0x20;
      out.push_back(static_cast<char>(c + 48));
    }
  }
  return out;
}

absl::StatusOr<std::vector<uint32_t>> DecompressRleCounts(
    std::string_view text) {
  std::vector<uint32_t> counts;
  size_t p = 0;
  while (p < text.size()) {
    int64_t x = 0;
    int k = 0;
    bool more = true;
    while (more) {
      if (p >= text.size() || k > 12) {
        return MakeError(ErrorKind::kCorpusError, "truncated RLE string");
      }
      const int64_t c = static_cast<unsigned char>(text[p]) - 48;
      if (c < 0 || c > 63) {
        return MakeError(ErrorKind::kCorpusError, "bad RLE character");
      }
      x |= (c & 0x1f) << (5 * k);
      more = (c & 0x20) != 0;
      ++p;
      ++k;
      if (!more && (c & 0x10)) x |= int64_t{-1} << (5 * k);
    }
    if (counts.size() > 2) x += counts[counts.size() - 2];
    if (x < 0 || x > UINT32_MAX) {
      return MakeError(ErrorKind::kCorpusError, "RLE run out of range");
    }
    counts.push_back(static_cast<uint32_t>(x));
  }
  return counts;
}

BinaryMask RasterizePolygons(const std::vector<std::vector<double>>& polygons,
                             int width, int height) {
  BinaryMask mask(width, height);
  std::vector<double> crossings;
  for (const auto& poly : polygons) {
    const size_t n = poly.size() / 2;
    if (n < 3) continue;
    for (int y = 0; y < height; ++y) {
      const double cy = y + 0.5;
      crossings.clear();
      for (size_t i = 0; i < n; ++i) {
        const double x0 = poly[2 * i];
        const double y0 = poly[2 * i + 1];
        const double x1 = poly[2 * ((i + 1) % n)];
        const double y1 = poly[2 * ((i + 1) % n) + 1];
        // Half-open in y so shared vertices are counted once.
        if ((y0 <= cy) == (y1 <= cy)) continue;
        crossings.push_back(x0 + (cy - y0) * (x1 - x0) / (y1 - y0));
      }
      std::sort(crossings.begin(), crossings.end());
      for (size_t i = 0; i + 1 < crossings.size(); i += 2) {
        // Pixel x is inside when its center x + 0.5 is in [a, b).
        const int first = static_cast<int>(std::ceil(crossings[i] - 0.5));
        const int last = static_cast<int>(std::ceil(crossings[i + 1] - 0.5)) - 1;
        for (int x = std::max(first, 0); x <= std::min(last, width - 1); ++x) {
          mask.Set(x, y);
        }
      }
    }
  }
  return mask;
}

absl::StatusOr<BinaryMask> DecodeSegmentation(const json& seg, int width,
                                              int height) {
  if (seg.is_array()) {
    std::vector<std::vector<double>> polygons;
    for (const json& poly : seg) {
      if (!poly.is_array() || poly.size() % 2 != 0) {
        return MakeError(ErrorKind::kCorpusError,
                         "polygon must be a flat list of x, y pairs");
      }
      std::vector<double> coords;
      for (const json& v : poly) {
        if (!v.is_number()) {
          return MakeError(ErrorKind::kCorpusError,
                           "polygon coordinate is not a number");
        }
        coords.push_back(v.get<double>());
      }
      polygons.push_back(std::move(coords));
    }
    return RasterizePolygons(polygons, width, height);
  }
  if (!seg.is_object() || !seg.contains("counts") || !seg.contains("size")) {
    return MakeError(ErrorKind::kCorpusError,
                     "segmentation is neither polygons nor RLE");
  }
  Rle rle;
  try {
    rle.height = seg["size"].at(0).get<int>();
    rle.width = seg["size"].at(1).get<int>();
    if (seg["counts"].is_string()) {
      LM_ASSIGN_OR_RETURN(
          rle.counts,
          DecompressRleCounts(seg["counts"].get<std::string>()));
    } else {
      rle.counts = seg["counts"].get<std::vector<uint32_t>>();
    }
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kCorpusError, StrCat("RLE: ", e.what()));
  }
  if (rle.width != width || rle.height != height) {
    return MakeError(ErrorKind::kCorpusError,
                     StrCat("RLE size ", rle.width, "x", rle.height,
                            " does not match the image ", width, "x",
                            height));
  }
  auto mask = DecodeRle(rle);
  if (!mask.ok()) {
    return MakeError(ErrorKind::kCorpusError, MessageOf(mask.status()));
  }
  return mask;
}

absl::StatusOr<Corpus> IngestCorpus(const std::string& dir,
                                    const PalettePtr& palette) {
  const std::string file = (fs::path(dir) / "annotations.json").string();
  auto text = ReadFile(file);
  if (!text.ok()) return Bad(file, MessageOf(text.status()));
  json doc;
  try {
    doc = json::parse(*text);
  } catch (const json::parse_error& e) {
    return Bad(file, StrCat(DescribeOffset(*text, e.byte == 0 ? 0 : e.byte - 1),
                            ": ", e.what()));
  }
  if (!doc.is_object()) return Bad(file, "top level must be an object");

  Corpus corpus;
  std::map<int64_t, std::string> category_names;
  std::vector<ImageEntry> images;
  std::map<int64_t, size_t> image_index;
  try {
    for (size_t i = 0; i < doc.value("categories", json::array()).size(); ++i) {
      const json& c = doc["categories"][i];
      category_names[c.at("id").get<int64_t>()] =
          ToLower(c.at("name").get<std::string>());
    }
    const json images_json = doc.value("images", json::array());
    for (size_t i = 0; i < images_json.size(); ++i) {
      const json& im = images_json[i];
      ImageEntry e{im.at("id").get<int64_t>(),
                   im.at("file_name").get<std::string>(),
                   im.at("width").get<int>(), im.at("height").get<int>()};
      if (image_index.count(e.id)) {
        return Bad(file, StrCat(Where("images", i), ": duplicate id ", e.id));
      }
      if (e.width < 1 || e.height < 1) {
        return Bad(file, StrCat(Where("images", i), ": bad size"));
      }
      image_index[e.id] = images.size();
      images.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    return Bad(file, e.what());
  }
  if (images.empty()) {
    corpus.warnings.push_back(StrCat(file, ": corpus has no images"));
    return corpus;
  }

  corpus.scenes.resize(images.size());
  std::vector<std::vector<std::pair<std::string, BinaryMask>>> masks(
      images.size());
  std::vector<bool> unmasked(images.size(), false);
  std::vector<int> annotation_count(images.size(), 0);
  std::set<std::string> seed_ids;
  for (size_t i = 0; i < images.size(); ++i) {
    const ImageEntry& e = images[i];
    const fs::path path = fs::path(dir) / e.file_name;
    if (!fs::exists(path)) {
      return Bad(file, StrCat(Where("images", i), ": missing file ",
                              path.string()));
    }
    auto bytes = ReadFile(path.string());
    if (!bytes.ok()) return Bad(path.string(), MessageOf(bytes.status()));
    auto image = DecodePng(*bytes);
    if (!image.ok()) return Bad(path.string(), MessageOf(image.status()));
    if (image->width() != e.width || image->height() != e.height) {
      return Bad(path.string(),
                 StrCat("image is ", image->width(), "x", image->height(),
                        " but the corpus says ", e.width, "x", e.height));
    }
    SceneRecord& r = corpus.scenes[i].record;
    r.seed_id = fs::path(e.file_name).stem().string();
    if (!seed_ids.insert(r.seed_id).second) {
      r.seed_id = StrCat(r.seed_id, "_", e.id);
    }
    r.image = *std::move(image);
  }

  const json annotations = doc.value("annotations", json::array());
  for (size_t i = 0; i < annotations.size(); ++i) {
    const json& a = annotations[i];
    try {
      const int64_t image_id = a.at("image_id").get<int64_t>();
      auto it = image_index.find(image_id);
      if (it == image_index.end()) {
        return Bad(file, StrCat(Where("annotations", i), ": unknown image_id ",
                                image_id));
      }
      const size_t k = it->second;
      ++annotation_count[k];
      const int64_t category_id = a.at("category_id").get<int64_t>();
      auto name = category_names.find(category_id);
      if (name == category_names.end()) {
        return Bad(file, StrCat(Where("annotations", i),
                                ": unknown category_id ", category_id));
      }
      if (!palette->HasCategory(name->second)) {
        corpus.warnings.push_back(StrCat(Where("annotations", i), ": '",
                                         name->second,
                                         "' is not in the palette, skipped"));
        continue;
      }
      if (!a.contains("segmentation") || a["segmentation"].is_null()) {
        unmasked[k] = true;
        continue;
      }
      auto mask = DecodeSegmentation(a["segmentation"], images[k].width,
                                     images[k].height);
      if (!mask.ok()) {
        return Bad(file, StrCat(Where("annotations", i), ": ",
                                MessageOf(mask.status())));
      }
      masks[k].emplace_back(name->second, *std::move(mask));
    } catch (const json::exception& e) {
      return Bad(file, StrCat(Where("annotations", i), ": ", e.what()));
    }
  }

  const json captions = doc.value("captions", json::array());
  for (size_t i = 0; i < captions.size(); ++i) {
    try {
      const int64_t image_id = captions[i].at("image_id").get<int64_t>();
      auto it = image_index.find(image_id);
      if (it == image_index.end()) {
        return Bad(file, StrCat(Where("captions", i), ": unknown image_id ",
                                image_id));
      }
      corpus.scenes[it->second].record.gt_captions.push_back(
          captions[i].at("caption").get<std::string>());
    } catch (const json::exception& e) {
      return Bad(file, StrCat(Where("captions", i), ": ", e.what()));
    }
  }

  for (size_t k = 0; k < images.size(); ++k) {
    CorpusScene& scene = corpus.scenes[k];
    SceneRecord& r = scene.record;
    if (r.gt_captions.empty()) {
      corpus.warnings.push_back(
          StrCat(r.seed_id, ": no reference captions"));
    }
    scene.annotated = annotation_count[k] > 0 && !unmasked[k];
    if (!scene.annotated) continue;
    // Later annotations are painted over earlier ones; each instance keeps
    // what stays visible.
    r.semantic_map = SemanticMap::Blank(images[k].width, images[k].height,
                                        palette);
    BinaryMask covered(images[k].width, images[k].height);
    std::vector<BinaryMask> visible(masks[k].size());
    for (size_t j = masks[k].size(); j-- > 0;) {
      visible[j] = masks[k][j].second.Minus(covered);
      covered = covered.Or(masks[k][j].second);
    }
    int z = 0;
    for (size_t j = 0; j < masks[k].size(); ++j) {
      if (visible[j].Empty()) {
        corpus.warnings.push_back(StrCat(r.seed_id, ": a '",
                                         masks[k][j].first,
                                         "' annotation is fully hidden"));
        continue;
      }
      r.semantic_map.Paint(visible[j], *palette->LabelOf(masks[k][j].first));
      r.instances.push_back(*ObjectInstance::Create(
          StrCat("obj", z), masks[k][j].first, visible[j], z));
      ++z;
    }
    r.candidates = CandidatesFromInstances(r.instances);
  }
  return corpus;
}

}  // namespace layoutmorph
