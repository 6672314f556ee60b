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

#include "layoutmorph/morphology.h"

#include <algorithm>
#include <utility>

namespace layoutmorph {

BinaryMask Dilate(const BinaryMask& mask, int kernel, int iterations) {
  const int r = kernel / 2;
  BinaryMask current = mask;
  for (int it = 0; it < iterations; ++it) {
    // Separable: horizontal pass then vertical pass.
    BinaryMask horizontal(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y) {
      for (int x = 0; x < mask.width(); ++x) {
        if (!current.Get(x, y)) continue;
        for (int dx = std::max(0, x - r);
             dx <= std::min(mask.width() - 1, x + r); ++dx) {
          horizontal.Set(dx, y);
        }
      }
    }
    BinaryMask next(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y) {
      for (int x = 0; x < mask.width(); ++x) {
        if (!horizontal.Get(x, y)) continue;
        for (int dy = std::max(0, y - r);
             dy <= std::min(mask.height() - 1, y + r); ++dy) {
          next.Set(x, dy);
        }
      }
    }
    current = std::move(next);
  }
  return current;
}

std::vector<BinaryMask> ConnectedComponents(const BinaryMask& mask,
                                            Connectivity connectivity) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<uint8_t> seen(static_cast<size_t>(w) * h, 0);
  std::vector<BinaryMask> components;
  std::vector<std::pair<int, int>> stack;
  const bool eight = connectivity == Connectivity::kEight;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (!mask.Get(x0, y0) || seen[static_cast<size_t>(y0) * w + x0]) {
        continue;
      }
      BinaryMask component(w, h);
      stack.assign(1, {x0, y0});
      seen[static_cast<size_t>(y0) * w + x0] = 1;
      while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        component.Set(x, y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!eight && dx != 0 && dy != 0) continue;
            const int nx = x + dx;
            const int ny = y + dy;
            if (!mask.InBounds(nx, ny) || !mask.Get(nx, ny)) continue;
            uint8_t& s = seen[static_cast<size_t>(ny) * w + nx];
            if (s) continue;
            s = 1;
            stack.emplace_back(nx, ny);
          }
        }
      }
      components.push_back(std::move(component));
    }
  }
  return components;
}

}  // namespace layoutmorph
