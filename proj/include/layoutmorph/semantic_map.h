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

#ifndef LAYOUTMORPH_SEMANTIC_MAP_H_
#define LAYOUTMORPH_SEMANTIC_MAP_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "layoutmorph/raster.h"

namespace layoutmorph {

using Label = uint8_t;
inline constexpr Label kBackgroundLabel = 0;

struct PaletteEntry {
  std::string name;
  Label index = 0;
  Rgb color;

  friend bool operator==(const PaletteEntry&, const PaletteEntry&) = default;
};

// Category <-> label <-> display color table. Label 0 is the unnamed
// background and always renders as kBackgroundColor, which no named entry
// may reuse; colors are unique so an image rendered from a map inverts
// exactly.
class CategoryPalette {
 public:
  static constexpr Rgb kBackgroundColor{0, 0, 0};

  static absl::StatusOr<CategoryPalette> Create(
      std::vector<PaletteEntry> entries);

  const std::vector<PaletteEntry>& entries() const { return entries_; }

  std::optional<Label> LabelOf(std::string_view name) const;
  std::optional<Label> LabelOfColor(Rgb color) const;
  // Empty string for the background label or an unknown label.
  std::string_view NameOf(Label label) const;
  Rgb ColorOf(Label label) const;
  bool Contains(Label label) const;
  bool HasCategory(std::string_view name) const {
    return LabelOf(name).has_value();
  }
  std::vector<std::string> CategoryNames() const;

  friend bool operator==(const CategoryPalette&,
                         const CategoryPalette&) = default;

 private:
  explicit CategoryPalette(std::vector<PaletteEntry> entries);

  std::vector<PaletteEntry> entries_;
  std::map<std::string, Label, std::less<>> by_name_;
  std::map<uint32_t, Label> by_color_;
  std::map<Label, size_t> by_label_;
};

using PalettePtr = std::shared_ptr<const CategoryPalette>;

// The palette shipped with the toolkit for synthetic scenes.
PalettePtr DefaultPalette();

// Category name -> object count. Every count is >= 1 and every name is a
// palette category.
using CandidateSet = std::map<std::string, int>;

class SemanticMap {
 public:
  SemanticMap() = default;

  static absl::StatusOr<SemanticMap> Create(int width, int height,
                                            std::vector<Label> labels,
                                            PalettePtr palette);
  // All-background map.
  static SemanticMap Blank(int width, int height, PalettePtr palette);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<Label>& labels() const { return labels_; }
  const CategoryPalette& palette() const { return *palette_; }
  const PalettePtr& palette_ptr() const { return palette_; }

  bool InBounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  Label at(int x, int y) const { return labels_[Index(x, y)]; }
  // Caller guarantees `label` is in the palette or 0.
  void set(int x, int y, Label label) { labels_[Index(x, y)] = label; }

  BinaryMask MaskOf(Label label) const;
  // Writes `label` on every set bit of `mask`.
  void Paint(const BinaryMask& mask, Label label);

  // Maps compare by dimensions, labels and palette contents.
  friend bool operator==(const SemanticMap& a, const SemanticMap& b);

 private:
  SemanticMap(int width, int height, std::vector<Label> labels,
              PalettePtr palette)
      : width_(width),
        height_(height),
        labels_(std::move(labels)),
        palette_(std::move(palette)) {}

  size_t Index(int x, int y) const {
    return static_cast<size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Label> labels_;
  PalettePtr palette_;
};

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_SEMANTIC_MAP_H_
