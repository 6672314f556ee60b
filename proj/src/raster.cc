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

#include "layoutmorph/raster.h"

#include <algorithm>

#include <fmt/format.h>
#include "layoutmorph/status.h"

namespace layoutmorph {

RgbImage::RgbImage(int width, int height, Rgb fill)
    : width_(width),
      height_(height),
      pixels_(static_cast<size_t>(width) * height, fill) {}

std::vector<uint8_t> RgbImage::Bytes() const {
  std::vector<uint8_t> out;
  out.reserve(pixels_.size() * 3);
  for (const Rgb& p : pixels_) {
    out.push_back(p.r);
    out.push_back(p.g);
    out.push_back(p.b);
  }
  return out;
}

std::string ToString(const BoundingBox& box) {
  return fmt::format("{{x:[{},{}] y:[{},{}]}}", box.x_min, box.x_max,
                         box.y_min, box.y_max);
}

BinaryMask::BinaryMask(int width, int height, bool value)
    : width_(width),
      height_(height),
      bits_(static_cast<size_t>(width) * height, value ? 1 : 0) {}

size_t BinaryMask::Count() const {
  return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

BinaryMask BinaryMask::Or(const BinaryMask& other) const {
  BinaryMask out = *this;
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] |= other.bits_[i];
  return out;
}

BinaryMask BinaryMask::And(const BinaryMask& other) const {
  BinaryMask out = *this;
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= other.bits_[i];
  return out;
}

BinaryMask BinaryMask::Minus(const BinaryMask& other) const {
  BinaryMask out = *this;
  for (size_t i = 0; i < bits_.size(); ++i) {
    if (other.bits_[i]) out.bits_[i] = 0;
  }
  return out;
}

bool BinaryMask::SubsetOf(const BinaryMask& other) const {
  for (size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

absl::StatusOr<BoundingBox> TightBbox(const BinaryMask& mask) {
  BoundingBox box{mask.width(), -1, mask.height(), -1};
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.Get(x, y)) continue;
      box.x_min = std::min(box.x_min, x);
      box.x_max = std::max(box.x_max, x);
      box.y_min = std::min(box.y_min, y);
      box.y_max = std::max(box.y_max, y);
    }
  }
  if (box.x_max < 0) {
    return MakeError(ErrorKind::kEmptyMask, "mask has no set pixels");
  }
  return box;
}

double IoU(const BinaryMask& a, const BinaryMask& b) {
  size_t inter = 0;
  size_t uni = 0;
  for (size_t i = 0; i < a.bits().size(); ++i) {
    inter += a.bits()[i] & b.bits()[i];
    uni += a.bits()[i] | b.bits()[i];
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
}

}  // namespace layoutmorph
