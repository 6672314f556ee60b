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

#ifndef LAYOUTMORPH_RASTER_H_
#define LAYOUTMORPH_RASTER_H_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace layoutmorph {

// Coordinates follow image convention: x is the column, y is the row, the
// origin is the top-left pixel and all bounds are inclusive.

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  uint32_t Packed() const {
    return (uint32_t{r} << 16) | (uint32_t{g} << 8) | uint32_t{b};
  }
  friend auto operator<=>(const Rgb&, const Rgb&) = default;
};

class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height, Rgb fill = {});

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  const Rgb& at(int x, int y) const { return pixels_[Index(x, y)]; }
  Rgb& at(int x, int y) { return pixels_[Index(x, y)]; }
  const std::vector<Rgb>& pixels() const { return pixels_; }

  // Interleaved RGB bytes, row-major.
  std::vector<uint8_t> Bytes() const;

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  size_t Index(int x, int y) const {
    return static_cast<size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> pixels_;
};

struct BoundingBox {
  int x_min = 0;
  int x_max = 0;
  int y_min = 0;
  int y_max = 0;

  int width() const { return x_max - x_min + 1; }
  int height() const { return y_max - y_min + 1; }
  bool Contains(int x, int y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

std::string ToString(const BoundingBox& box);

class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool value = false);

  int width() const { return width_; }
  int height() const { return height_; }

  bool InBounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool Get(int x, int y) const { return bits_[Index(x, y)] != 0; }
  void Set(int x, int y, bool value = true) {
    bits_[Index(x, y)] = value ? 1 : 0;
  }

  size_t Count() const;
  bool Empty() const { return Count() == 0; }
  bool SameShape(const BinaryMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  // Set operations require equal shapes; callers check SameShape first.
  BinaryMask Or(const BinaryMask& other) const;
  BinaryMask And(const BinaryMask& other) const;
  BinaryMask Minus(const BinaryMask& other) const;
  // True when every set bit of this mask is also set in `other`.
  bool SubsetOf(const BinaryMask& other) const;

  const std::vector<uint8_t>& bits() const { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  size_t Index(int x, int y) const {
    return static_cast<size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> bits_;
};

// Minimal inclusive box containing every set bit. EmptyMask when none.
absl::StatusOr<BoundingBox> TightBbox(const BinaryMask& mask);

double IoU(const BinaryMask& a, const BinaryMask& b);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_RASTER_H_
