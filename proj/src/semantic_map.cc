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

#include "layoutmorph/semantic_map.h"

#include <cctype>

#include "layoutmorph/strings.h"
#include "layoutmorph/codec.h"
#include "layoutmorph/embedded_data.h"
#include "layoutmorph/status.h"

namespace layoutmorph {

CategoryPalette::CategoryPalette(std::vector<PaletteEntry> entries)
    : entries_(std::move(entries)) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    by_name_[entries_[i].name] = entries_[i].index;
    by_color_[entries_[i].color.Packed()] = entries_[i].index;
    by_label_[entries_[i].index] = i;
  }
}

absl::StatusOr<CategoryPalette> CategoryPalette::Create(
    std::vector<PaletteEntry> entries) {
  std::map<std::string, int> names;
  std::map<uint32_t, int> colors;
  std::map<int, int> labels;
  for (const PaletteEntry& e : entries) {
    if (e.index == kBackgroundLabel) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("label 0 is reserved, used by '", e.name,
                                    "'"));
    }
    if (e.name.empty()) {
      return MakeError(ErrorKind::kPaletteMismatch, "empty category name");
    }
    for (char c : e.name) {
      if (std::isupper(static_cast<unsigned char>(c))) {
        return MakeError(ErrorKind::kPaletteMismatch,
                         StrCat("category '", e.name,
                                      "' is not lowercase"));
      }
    }
    if (e.color == kBackgroundColor) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("'", e.name,
                                    "' reuses the background color"));
    }
    if (names[e.name]++ > 0 || labels[e.index]++ > 0 ||
        colors[e.color.Packed()]++ > 0) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("duplicate name, label or color at '",
                                    e.name, "'"));
    }
  }
  return CategoryPalette(std::move(entries));
}

std::optional<Label> CategoryPalette::LabelOf(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<Label> CategoryPalette::LabelOfColor(Rgb color) const {
  if (color == kBackgroundColor) return kBackgroundLabel;
  auto it = by_color_.find(color.Packed());
  if (it == by_color_.end()) return std::nullopt;
  return it->second;
}

std::string_view CategoryPalette::NameOf(Label label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return {};
  return entries_[it->second].name;
}

Rgb CategoryPalette::ColorOf(Label label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return kBackgroundColor;
  return entries_[it->second].color;
}

bool CategoryPalette::Contains(Label label) const {
  return label == kBackgroundLabel || by_label_.count(label) > 0;
}

std::vector<std::string> CategoryPalette::CategoryNames() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

PalettePtr DefaultPalette() {
  static const PalettePtr* palette = [] {
    auto parsed = ParsePaletteJson(embedded::kPaletteJson);
    return new PalettePtr(
        std::make_shared<const CategoryPalette>(std::move(parsed).value()));
  }();
  return *palette;
}

absl::StatusOr<SemanticMap> SemanticMap::Create(int width, int height,
                                                std::vector<Label> labels,
                                                PalettePtr palette) {
  if (width < 1 || height < 1) {
    return MakeError(ErrorKind::kShapeError,
                     StrCat("map must be at least 1x1, got ", width,
                                  "x", height));
  }
  if (labels.size() != static_cast<size_t>(width) * height) {
    return MakeError(ErrorKind::kShapeError,
                     StrCat("label grid has ", labels.size(),
                                  " cells, expected ", width * height));
  }
  if (palette == nullptr) {
    return MakeError(ErrorKind::kPaletteMismatch, "missing palette");
  }
  for (Label l : labels) {
    if (!palette->Contains(l)) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("label ", int{l}, " not in palette"));
    }
  }
  return SemanticMap(width, height, std::move(labels), std::move(palette));
}

SemanticMap SemanticMap::Blank(int width, int height, PalettePtr palette) {
  return SemanticMap(width, height,
                     std::vector<Label>(static_cast<size_t>(width) * height,
                                        kBackgroundLabel),
                     std::move(palette));
}

BinaryMask SemanticMap::MaskOf(Label label) const {
  BinaryMask mask(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (at(x, y) == label) mask.Set(x, y);
    }
  }
  return mask;
}

void SemanticMap::Paint(const BinaryMask& mask, Label label) {
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (mask.Get(x, y)) set(x, y, label);
    }
  }
}

bool operator==(const SemanticMap& a, const SemanticMap& b) {
  if (a.width_ != b.width_ || a.height_ != b.height_ ||
      a.labels_ != b.labels_) {
    return false;
  }
  if (a.palette_ == b.palette_) return true;
  if (a.palette_ == nullptr || b.palette_ == nullptr) return false;
  return *a.palette_ == *b.palette_;
}

}  // namespace layoutmorph
