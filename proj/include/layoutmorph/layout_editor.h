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

// Layout edits on single-object masks: translation (MR1), rotation (MR2),
// scaling (MR3) and horizontal mirroring (MR4), plus the step loop that
// composes an edited semantic map.

#ifndef LAYOUTMORPH_LAYOUT_EDITOR_H_
#define LAYOUTMORPH_LAYOUT_EDITOR_H_

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "layoutmorph/scene.h"

namespace layoutmorph {

enum class Mr { kTranslate = 1, kRotate = 2, kScale = 3, kMirror = 4 };

// "MR1".."MR4".
std::string MrTag(Mr mr);
absl::StatusOr<Mr> ParseMr(std::string_view tag);

struct Canvas {
  int width = 0;
  int height = 0;
};

struct EditConfig {
  int step_budget = 1;
  double rotation_min_deg = -30.0;
  double rotation_max_deg = 30.0;
  // |theta| below this is never sampled.
  double rotation_dead_zone_deg = 2.0;
  double scale_min = 0.6;
  double scale_max = 1.4;
  // Scale factors inside [dead_low, dead_high] are never sampled.
  double scale_dead_low = 0.95;
  double scale_dead_high = 1.05;
  std::set<Mr> enabled_mrs{Mr::kTranslate, Mr::kRotate, Mr::kScale,
                           Mr::kMirror};
  int max_resample_attempts = 10;
  double min_retained_area_fraction = 0.5;

  absl::Status Validate() const;
  nlohmann::json ToJson() const;
  static absl::StatusOr<EditConfig> FromJson(const nlohmann::json& doc);
};

struct EditStep {
  std::string instance_id;
  Mr mr = Mr::kTranslate;
  int dx = 0;
  int dy = 0;
  double theta_deg = 0.0;
  double alpha = 1.0;

  friend bool operator==(const EditStep&, const EditStep&) = default;
};

struct EditTrace {
  std::vector<EditStep> steps;

  nlohmann::json ToJson() const;
  static absl::StatusOr<EditTrace> FromJson(const nlohmann::json& doc);
  friend bool operator==(const EditTrace&, const EditTrace&) = default;
};

// Inclusive legal shift ranges keeping the whole box on the canvas.
struct ShiftRange {
  int dx_min, dx_max, dy_min, dy_max;
};
ShiftRange LegalShifts(const BoundingBox& box, Canvas canvas);

absl::StatusOr<ObjectInstance> Translate(const ObjectInstance& obj, int dx,
                                         int dy, Canvas canvas);

// Uniform over the legal shifts minus (0, 0). NoLegalMove if that is empty.
absl::StatusOr<std::pair<int, int>> SampleTranslation(
    const ObjectInstance& obj, Canvas canvas, std::mt19937_64& rng);

// Box center kept as doubled integers so half-pixel centers stay exact.
struct Center {
  int64_t twice_x = 0;
  int64_t twice_y = 0;

  double x() const { return twice_x / 2.0; }
  double y() const { return twice_y / 2.0; }
  friend bool operator==(const Center&, const Center&) = default;
};
Center ObjectCenter(const ObjectInstance& obj);

// Nearest-neighbour inverse mapping about ObjectCenter. Pixels that land
// off the canvas are dropped. `retained`, when given, receives the kept
// fraction of the unclipped result.
absl::StatusOr<ObjectInstance> Rotate(const ObjectInstance& obj,
                                      double theta_deg, Canvas canvas,
                                      double* retained = nullptr);
absl::StatusOr<ObjectInstance> Scale(const ObjectInstance& obj, double alpha,
                                     Canvas canvas,
                                     double* retained = nullptr);

// Reflects about the box's vertical center line; x -> x_min + x_max - x.
ObjectInstance Mirror(const ObjectInstance& obj);

// Applies one recorded step with its exact parameters.
absl::StatusOr<ObjectInstance> ApplyStep(const ObjectInstance& obj,
                                         const EditStep& step, Canvas canvas,
                                         double* retained = nullptr);

struct EditResult {
  SemanticMap map;
  EditTrace trace;
  std::vector<ObjectInstance> singles;
};

// Runs `step_budget` successful edits and composes the result onto
// `background` in ascending z-order. A step is redrawn when the transform
// degenerates, keeps too little area, or changes the per-category
// component counts of the composed map.
absl::StatusOr<EditResult> Edit(const SemanticMap& background,
                                const std::vector<ObjectInstance>& singles,
                                const EditConfig& config,
                                std::mt19937_64& rng);

// Re-applies a trace. The result is bit-identical to the original edit.
absl::StatusOr<EditResult> ReplayTrace(
    const SemanticMap& background, const std::vector<ObjectInstance>& singles,
    const EditTrace& trace);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_LAYOUT_EDITOR_H_
