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

#include "layoutmorph/scene.h"

#include <algorithm>
#include <numeric>
#include <utility>

#include "layoutmorph/strings.h"

namespace layoutmorph {
namespace {

// Labels 4-connected same-label regions; returns the component id per pixel
// (-1 for background) and the label of each component in scan order.
std::vector<int> LabelRegions(const SemanticMap& map,
                              std::vector<Label>& component_labels) {
  const int w = map.width();
  const int h = map.height();
  std::vector<int> ids(static_cast<size_t>(w) * h, -1);
  std::vector<std::pair<int, int>> stack;
  component_labels.clear();
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      const Label label = map.at(x0, y0);
      if (label == kBackgroundLabel ||
          ids[static_cast<size_t>(y0) * w + x0] >= 0) {
        continue;
      }
      const int id = static_cast<int>(component_labels.size());
      component_labels.push_back(label);
      ids[static_cast<size_t>(y0) * w + x0] = id;
      stack.assign(1, {x0, y0});
      while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        constexpr int kDx[] = {1, -1, 0, 0};
        constexpr int kDy[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = x + kDx[k];
          const int ny = y + kDy[k];
          if (!map.InBounds(nx, ny) || map.at(nx, ny) != label) continue;
          int& slot = ids[static_cast<size_t>(ny) * w + nx];
          if (slot >= 0) continue;
          slot = id;
          stack.emplace_back(nx, ny);
        }
      }
    }
  }
  return ids;
}

}  // namespace

absl::StatusOr<ObjectInstance> ObjectInstance::Create(std::string instance_id,
                                                      std::string category,
                                                      BinaryMask mask,
                                                      int z_order) {
  auto box = TightBbox(mask);
  if (!box.ok()) return box.status();
  ObjectInstance obj;
  obj.instance_id_ = std::move(instance_id);
  obj.category_ = std::move(category);
  obj.mask_ = std::move(mask);
  obj.bbox_ = *box;
  obj.z_order_ = z_order;
  return obj;
}

std::vector<ObjectInstance> SplitInstances(const SemanticMap& map) {
  std::vector<Label> labels;
  const std::vector<int> ids = LabelRegions(map, labels);
  std::vector<BinaryMask> masks(labels.size(),
                                BinaryMask(map.width(), map.height()));
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const int id = ids[static_cast<size_t>(y) * map.width() + x];
      if (id >= 0) masks[id].Set(x, y);
    }
  }
  std::vector<ObjectInstance> out;
  out.reserve(labels.size());
  for (size_t k = 0; k < labels.size(); ++k) {
    // Components are non-empty by construction.
    out.push_back(*ObjectInstance::Create(
        StrCat("obj", k), std::string(map.palette().NameOf(labels[k])),
        std::move(masks[k]), static_cast<int>(k)));
  }
  return out;
}

CandidateSet CountComponents(const SemanticMap& map) {
  std::vector<Label> labels;
  LabelRegions(map, labels);
  CandidateSet counts;
  for (Label l : labels) ++counts[std::string(map.palette().NameOf(l))];
  return counts;
}

CandidateSet CandidatesFromInstances(const std::vector<ObjectInstance>& objs) {
  CandidateSet counts;
  for (const auto& o : objs) ++counts[o.category()];
  return counts;
}

SemanticMap Compose(const SemanticMap& background,
                    const std::vector<ObjectInstance>& instances) {
  std::vector<size_t> order(instances.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return instances[a].z_order() < instances[b].z_order();
  });
  SemanticMap out = background;
  for (size_t i : order) {
    const auto label = background.palette().LabelOf(instances[i].category());
    if (!label.has_value()) continue;
    out.Paint(instances[i].mask(), *label);
  }
  return out;
}

}  // namespace layoutmorph
