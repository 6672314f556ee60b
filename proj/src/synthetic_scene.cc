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

#include "layoutmorph/synthetic_scene.h"

#include <algorithm>
#include <random>

#include "layoutmorph/lexicon.h"
#include "layoutmorph/strings.h"
#include "layoutmorph/synthetic_backends.h"

namespace layoutmorph {
namespace {

bool FarEnough(const BoundingBox& a, const BoundingBox& b, int gap) {
  return a.x_max + gap < b.x_min || b.x_max + gap < a.x_min ||
         a.y_max + gap < b.y_min || b.y_max + gap < a.y_min;
}

BoundingBox Union(const BoundingBox& a, const BoundingBox& b) {
  return {std::min(a.x_min, b.x_min), std::max(a.x_max, b.x_max),
          std::min(a.y_min, b.y_min), std::max(a.y_max, b.y_max)};
}

int Uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// "a photo with a group of dogs and a cat": vague counts on purpose.
std::string LooseCaption(const CandidateSet& counts,
                         const CaptionGrammar& grammar) {
  std::vector<std::string> phrases;
  for (const auto& [category, n] : counts) {
    phrases.push_back(n == 1 ? StrCat(grammar.Article(category), " ", category)
                             : StrCat("a group of ",
                                      grammar.inflector.Plural(category)));
  }
  return StrCat("a photo with ", JoinStrings(phrases, " and "));
}

struct Placed {
  std::string category;
  BoundingBox box;
  BinaryMask mask;
};

}  // namespace

BinaryMask SymmetricShape(int kind, const BoundingBox& box, int width,
                          int height) {
  BinaryMask mask(width, height);
  const int w = box.width();
  const int h = box.height();
  const int arm_u = std::max(1, (w - 1) / 3);
  const int arm_v = std::max(1, (h - 1) / 3);
  for (int y = box.y_min; y <= box.y_max; ++y) {
    for (int x = box.x_min; x <= box.x_max; ++x) {
      // Doubled offsets from the box center: symmetric under negation.
      const int u = 2 * x - box.x_min - box.x_max;
      const int v = 2 * y - box.y_min - box.y_max;
      bool on = true;
      if (kind == 1) {
        on = static_cast<double>(u) * u / (static_cast<double>(w) * w) +
                 static_cast<double>(v) * v / (static_cast<double>(h) * h) <=
             1.0;
      } else if (kind == 2) {
        on = std::abs(u) <= arm_u || std::abs(v) <= arm_v;
      }
      if (on) mask.Set(x, y);
    }
  }
  return mask;
}

SyntheticScene GenerateScene(const SyntheticSceneOptions& options,
                             const PalettePtr& palette, uint64_t seed,
                             std::string seed_id) {
  std::mt19937_64 rng(seed);
  const int pool =
      options.category_pool > 0
          ? std::min<int>(options.category_pool, palette->entries().size())
          : static_cast<int>(palette->entries().size());
  const int wanted = Uniform(rng, options.min_objects, options.max_objects);
  std::vector<Placed> placed;
  bool overlap = false;

  auto fits = [&](const BoundingBox& box) {
    return std::all_of(placed.begin(), placed.end(), [&](const Placed& p) {
      return FarEnough(box, p.box, options.min_gap);
    });
  };
  auto pick_category = [&](const std::string& avoid) {
    std::string c;
    do {
      c = palette->entries()[Uniform(rng, 0, pool - 1)].name;
    } while (c == avoid && pool > 1);
    return c;
  };

  for (int k = 0; k < wanted; ++k) {
    for (int tries = 0; tries < 200; ++tries) {
      const int w = Uniform(rng, options.min_size, options.max_size);
      const int h = Uniform(rng, options.min_size, options.max_size);
      if (w > options.width || h > options.height) continue;
      const int x0 = Uniform(rng, 0, options.width - w);
      const int y0 = Uniform(rng, 0, options.height - h);
      const BoundingBox box{x0, x0 + w - 1, y0, y0 + h - 1};
      const std::string category = pick_category("");
      if (options.occlusion && Uniform(rng, 0, 1) == 1) {
        // Partner covers the bottom-right corner, leaving an L visible.
        const int ov = Uniform(rng, 2, std::min(4, std::min(w, h) - 1));
        const int s = Uniform(rng, options.min_size, options.max_size);
        const BoundingBox partner{box.x_max - ov + 1, box.x_max - ov + s,
                                  box.y_max - ov + 1, box.y_max - ov + s};
        if (partner.x_max >= options.width ||
            partner.y_max >= options.height || !fits(Union(box, partner))) {
          continue;
        }
        placed.push_back({category, box,
                          SymmetricShape(0, box, options.width,
                                         options.height)});
        placed.push_back({pick_category(category), partner,
                          SymmetricShape(0, partner, options.width,
                                         options.height)});
        overlap = true;
        break;
      }
      if (!fits(box)) continue;
      placed.push_back({category, box,
                        SymmetricShape(Uniform(rng, 0, 2), box, options.width,
                                       options.height)});
      break;
    }
  }

  SyntheticScene out;
  out.has_overlap = overlap;
  SemanticMap map = SemanticMap::Blank(options.width, options.height, palette);
  for (const Placed& p : placed) map.Paint(p.mask, *palette->LabelOf(p.category));
  for (size_t k = 0; k < placed.size(); ++k) {
    BinaryMask visible = placed[k].mask;
    for (size_t later = k + 1; later < placed.size(); ++later) {
      visible = visible.Minus(placed[later].mask);
    }
    // Corner overlaps never hide a whole object.
    out.record.instances.push_back(*ObjectInstance::Create(
        StrCat("obj", k), placed[k].category, std::move(visible),
        static_cast<int>(k)));
    out.full_masks.push_back(placed[k].mask);
  }
  out.record.seed_id = std::move(seed_id);
  out.record.candidates = CandidatesFromInstances(out.record.instances);
  out.record.image = RenderFlat(map);
  out.record.semantic_map = std::move(map);
  const CaptionGrammar& grammar = CaptionGrammar::Default();
  out.record.gt_captions = {
      grammar.Render(out.record.candidates, Cardinals::Default()),
      LooseCaption(out.record.candidates, grammar)};
  return out;
}

}  // namespace layoutmorph
