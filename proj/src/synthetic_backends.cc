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

#include "layoutmorph/synthetic_backends.h"

#include <random>
#include <set>

#include "layoutmorph/strings.h"
#include "json.hpp"
#include "layoutmorph/morphology.h"
#include "layoutmorph/seeding.h"
#include "layoutmorph/status.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;

}  // namespace

absl::Status TranslationParams::Validate() const {
  if (!(guidance_strength > 0.0)) {
    return MakeError(ErrorKind::kPrecondition,
                     "guidance_strength must be positive");
  }
  if (diffusion_steps < 1 || samples_per_map < 1) {
    return MakeError(ErrorKind::kPrecondition,
                     "diffusion_steps and samples_per_map must be >= 1");
  }
  return absl::OkStatus();
}

std::string_view FaultKindName(FaultKind kind) {
  switch (kind) {
    case FaultKind::kOmission:
      return "omission";
    case FaultKind::kMisclassification:
      return "misclassification";
    case FaultKind::kMiscount:
      return "miscount";
  }
  return "omission";
}

absl::StatusOr<FaultKind> ParseFaultKind(std::string_view name) {
  for (FaultKind k : {FaultKind::kOmission, FaultKind::kMisclassification,
                      FaultKind::kMiscount}) {
    if (FaultKindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(StrCat("unknown fault kind ", name));
}

RgbImage RenderFlat(const SemanticMap& map) {
  RgbImage image(map.width(), map.height());
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      image.at(x, y) = map.palette().ColorOf(map.at(x, y));
    }
  }
  return image;
}

absl::StatusOr<std::vector<RgbImage>> FlatRenderer::Translate(
    const SemanticMap& map, const TranslationParams& params) {
  LM_RETURN_IF_ERROR(params.Validate());
  return std::vector<RgbImage>(params.samples_per_map, RenderFlat(map));
}

absl::StatusOr<SemanticMap> ExactSegmenter::ToMap(const RgbImage& image) const {
  if (image.empty()) {
    return MakeError(ErrorKind::kShapeError, "empty image");
  }
  std::vector<Label> labels;
  labels.reserve(image.pixels().size());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const Rgb c = image.at(x, y);
      auto label = palette_->LabelOfColor(c);
      if (!label.has_value()) {
        return MakeError(ErrorKind::kPaletteMismatch,
                         StrCat("color (", c.r, ",", c.g, ",", c.b,
                                      ") at (", x, ",", y,
                                      ") is not in the palette"));
      }
      labels.push_back(*label);
    }
  }
  return SemanticMap::Create(image.width(), image.height(), std::move(labels),
                             palette_);
}

absl::StatusOr<SegmentationResult> ExactSegmenter::Segment(
    const RgbImage& image) {
  LM_ASSIGN_OR_RETURN(SemanticMap map, ToMap(image));
  SegmentationResult result;
  result.instances = SplitInstances(map);
  result.candidates = CandidatesFromInstances(result.instances);
  result.map = std::move(map);
  return result;
}

absl::StatusOr<RgbImage> BackgroundFillInpainter::Inpaint(
    const RgbImage& image, const BinaryMask& region) {
  if (image.width() != region.width() || image.height() != region.height()) {
    return MakeError(ErrorKind::kShapeError,
                     StrCat("region ", region.width(), "x",
                                  region.height(), " vs image ", image.width(),
                                  "x", image.height()));
  }
  auto rank = [&](Rgb c) -> uint64_t {
    if (auto label = palette_->LabelOfColor(c)) return *label;
    return 256 + uint64_t{c.Packed()};
  };
  RgbImage out = image;
  for (const BinaryMask& part :
       ConnectedComponents(region, Connectivity::kEight)) {
    // Outer border: pixels outside the region adjacent to this part.
    std::map<uint32_t, int> votes;
    std::map<uint32_t, Rgb> colors;
    BinaryMask border(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        if (!part.Get(x, y)) continue;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx;
            const int ny = y + dy;
            if (!region.InBounds(nx, ny) || region.Get(nx, ny) ||
                border.Get(nx, ny)) {
              continue;
            }
            border.Set(nx, ny);
            const Rgb c = image.at(nx, ny);
            ++votes[c.Packed()];
            colors[c.Packed()] = c;
          }
        }
      }
    }
    Rgb fill = CategoryPalette::kBackgroundColor;
    int best = -1;
    for (const auto& [packed, n] : votes) {
      const Rgb c = colors[packed];
      if (n > best || (n == best && rank(c) < rank(fill))) {
        best = n;
        fill = c;
      }
    }
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        if (part.Get(x, y)) out.at(x, y) = fill;
      }
    }
  }
  return out;
}

absl::Status FaultPolicy::Validate(const CategoryPalette& palette) const {
  for (double p : {p_omit, p_misclassify, p_miscount}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      return MakeError(ErrorKind::kPrecondition,
                       "fault probabilities must lie in [0, 1]");
    }
  }
  for (const auto& [from, to] : confusion_table) {
    if (!palette.HasCategory(from) || !palette.HasCategory(to) || from == to) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("bad confusion pair ", from, " -> ", to));
    }
  }
  if (target_category.has_value() && !palette.HasCategory(*target_category)) {
    return MakeError(ErrorKind::kPaletteMismatch,
                     StrCat("unknown target ", *target_category));
  }
  return absl::OkStatus();
}

absl::StatusOr<FaultPolicy> FaultPolicy::FromJson(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::InvalidArgumentError("fault policy must be a JSON object");
  }
  FaultPolicy p;
  try {
    p.p_omit = doc.value("p_omit", 0.0);
    p.p_misclassify = doc.value("p_misclassify", 0.0);
    p.p_miscount = doc.value("p_miscount", 0.0);
    p.confusion_table = doc.value("confusion_table",
                                  std::map<std::string, std::string>{});
    p.rng_seed = doc.value("rng_seed", uint64_t{0});
    if (doc.contains("target_category") && !doc["target_category"].is_null()) {
      p.target_category = doc["target_category"].get<std::string>();
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(StrCat("fault policy: ", e.what()));
  }
  return p;
}

std::string FaultPolicy::ToJson() const {
  json doc{{"p_omit", p_omit},
           {"p_misclassify", p_misclassify},
           {"p_miscount", p_miscount},
           {"confusion_table", confusion_table},
           {"rng_seed", rng_seed}};
  if (target_category.has_value()) doc["target_category"] = *target_category;
  return doc.dump();
}

json FaultLogToJson(const std::vector<FaultRecord>& log) {
  json out = json::array();
  for (const FaultRecord& f : log) {
    json j{{"kind", FaultKindName(f.kind)},
           {"category", f.category},
           {"true_count", f.true_count},
           {"stated_count", f.stated_count}};
    if (!f.substitute.empty()) j["substitute"] = f.substitute;
    out.push_back(std::move(j));
  }
  return out;
}

absl::StatusOr<std::vector<FaultRecord>> FaultLogFromJson(const json& doc) {
  if (!doc.is_array()) {
    return absl::InvalidArgumentError("fault log must be an array");
  }
  std::vector<FaultRecord> log;
  try {
    for (const json& j : doc) {
      FaultRecord f;
      auto kind = ParseFaultKind(j.at("kind").get<std::string>());
      if (!kind.ok()) return kind.status();
      f.kind = *kind;
      f.category = j.at("category").get<std::string>();
      f.substitute = j.value("substitute", "");
      f.true_count = j.at("true_count").get<int>();
      f.stated_count = j.at("stated_count").get<int>();
      log.push_back(std::move(f));
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(StrCat("fault log: ", e.what()));
  }
  return log;
}

std::map<std::string, int> ApplyFaults(std::map<std::string, int> counts,
                                       const std::vector<FaultRecord>& log) {
  for (const FaultRecord& f : log) {
    switch (f.kind) {
      case FaultKind::kOmission:
        counts.erase(f.category);
        break;
      case FaultKind::kMisclassification:
        counts.erase(f.category);
        counts[f.substitute] = f.stated_count;
        break;
      case FaultKind::kMiscount:
        counts[f.category] = f.stated_count;
        break;
    }
  }
  return counts;
}

SyntheticCaption CaptionCounts(const std::map<std::string, int>& true_counts,
                               const FaultPolicy& policy,
                               const CaptionGrammar& grammar,
                               const Cardinals& cardinals) {
  std::mt19937_64 rng(policy.rng_seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::map<std::string, int> counts = true_counts;
  std::set<std::string> touched;
  std::vector<FaultRecord> log;

  auto pick = [&](auto&& allowed) -> std::optional<std::string> {
    std::vector<std::string> eligible;
    for (const auto& [category, n] : counts) {
      if (policy.target_category && *policy.target_category != category) {
        continue;
      }
      if (touched.count(category) || !allowed(category)) continue;
      eligible.push_back(category);
    }
    if (eligible.empty()) return std::nullopt;
    std::uniform_int_distribution<size_t> index(0, eligible.size() - 1);
    return eligible[index(rng)];
  };
  auto any = [](const std::string&) { return true; };

  if (policy.p_omit > 0.0 && coin(rng) < policy.p_omit) {
    if (auto c = pick(any)) {
      log.push_back({FaultKind::kOmission, *c, "", counts[*c], 0});
      counts.erase(*c);
      touched.insert(*c);
    }
  }
  if (policy.p_misclassify > 0.0 && coin(rng) < policy.p_misclassify) {
    auto confusable = [&](const std::string& category) {
      auto it = policy.confusion_table.find(category);
      return it != policy.confusion_table.end() && !counts.count(it->second);
    };
    if (auto c = pick(confusable)) {
      const std::string sub = policy.confusion_table.at(*c);
      const int n = counts[*c];
      log.push_back({FaultKind::kMisclassification, *c, sub, n, n});
      counts.erase(*c);
      counts[sub] = n;
      touched.insert(*c);
      touched.insert(sub);
    }
  }
  if (policy.p_miscount > 0.0 && coin(rng) < policy.p_miscount) {
    if (auto c = pick(any)) {
      const int n = counts[*c];
      log.push_back({FaultKind::kMiscount, *c, "", n, n + 1});
      counts[*c] = n + 1;
      touched.insert(*c);
    }
  }
  return {grammar.Render(counts, cardinals), std::move(log)};
}

SyntheticCaption CaptionSynthetic(const SemanticMap& map,
                                  const FaultPolicy& policy,
                                  const CaptionGrammar& grammar,
                                  const Cardinals& cardinals) {
  return CaptionCounts(CountComponents(map), policy, grammar, cardinals);
}

FaultInjectingCaptioner::FaultInjectingCaptioner(PalettePtr palette,
                                                 FaultPolicy policy)
    : segmenter_(std::move(palette)), policy_(std::move(policy)) {}

absl::StatusOr<std::string> FaultInjectingCaptioner::Caption(
    const RgbImage& image) {
  LM_ASSIGN_OR_RETURN(CaptionResult result, CaptionWithLog(image));
  return std::move(result.caption);
}

absl::StatusOr<CaptionResult> FaultInjectingCaptioner::CaptionWithLog(
    const RgbImage& image) {
  LM_ASSIGN_OR_RETURN(SemanticMap map, segmenter_.ToMap(image));
  const std::vector<uint8_t> bytes = image.Bytes();
  FaultPolicy seeded = policy_;
  seeded.rng_seed = MixSeeds(
      {policy_.rng_seed,
       StableHash(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                   bytes.size()))});
  SyntheticCaption synthetic = CaptionSynthetic(map, seeded);
  return CaptionResult{std::move(synthetic.caption), true,
                       std::move(synthetic.injected)};
}

}  // namespace layoutmorph
