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

#include "layoutmorph/layout_editor.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "layoutmorph/status.h"
#include "layoutmorph/strings.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;

int RoundHalfUp(double v) { return static_cast<int>(std::floor(v + 0.5)); }

// Shared inverse-mapping resampler. `to_source` maps a destination offset
// from the center to a source offset. The destination window is scanned
// without clipping so the unclipped area is known.
template <typename ToSource>
absl::StatusOr<ObjectInstance> Resample(const ObjectInstance& obj,
                                        Canvas canvas, double reach,
                                        ToSource to_source,
                                        double* retained) {
  const Center c = ObjectCenter(obj);
  const double cx = c.x();
  const double cy = c.y();
  const int x0 = static_cast<int>(std::floor(cx - reach)) - 1;
  const int x1 = static_cast<int>(std::ceil(cx + reach)) + 1;
  const int y0 = static_cast<int>(std::floor(cy - reach)) - 1;
  const int y1 = static_cast<int>(std::ceil(cy + reach)) + 1;
  const BinaryMask& src = obj.mask();
  BinaryMask out(canvas.width, canvas.height);
  size_t total = 0;
  size_t kept = 0;
  for (int py = y0; py <= y1; ++py) {
    for (int px = x0; px <= x1; ++px) {
      auto [ox, oy] = to_source(px - cx, py - cy);
      const int sx = RoundHalfUp(cx + ox);
      const int sy = RoundHalfUp(cy + oy);
      if (!src.InBounds(sx, sy) || !src.Get(sx, sy)) continue;
      ++total;
      if (out.InBounds(px, py)) {
        out.Set(px, py);
        ++kept;
      }
    }
  }
  if (kept == 0) {
    return MakeError(ErrorKind::kDegenerateTransform,
                     StrCat(obj.instance_id(), " has no pixels left"));
  }
  if (retained != nullptr) *retained = static_cast<double>(kept) / total;
  return obj.WithMask(std::move(out));
}

// Half-diagonal of the box plus a pixel, enough to cover any rotation.
double Reach(const BoundingBox& b) {
  return std::hypot(b.width() / 2.0 + 1.0, b.height() / 2.0 + 1.0);
}

// Uniform draw from [lo, gap_lo] united with [gap_hi, hi].
double SampleOutsideGap(double lo, double gap_lo, double gap_hi, double hi,
                        std::mt19937_64& rng) {
  const double left = std::max(0.0, gap_lo - lo);
  const double right = std::max(0.0, hi - gap_hi);
  const double u =
      std::uniform_real_distribution<double>(0.0, left + right)(rng);
  return u < left ? lo + u : gap_hi + (u - left);
}

}  // namespace

std::string MrTag(Mr mr) { return StrCat("MR", static_cast<int>(mr)); }

absl::StatusOr<Mr> ParseMr(std::string_view tag) {
  for (Mr mr : {Mr::kTranslate, Mr::kRotate, Mr::kScale, Mr::kMirror}) {
    if (MrTag(mr) == tag) return mr;
  }
  return MakeError(ErrorKind::kPrecondition,
                   StrCat("unknown relation '", tag, "', want MR1..MR4"));
}

absl::Status EditConfig::Validate() const {
  if (step_budget < 1) {
    return MakeError(ErrorKind::kPrecondition, "step_budget must be >= 1");
  }
  if (enabled_mrs.empty()) {
    return MakeError(ErrorKind::kPrecondition, "no relation enabled");
  }
  if (max_resample_attempts < 1) {
    return MakeError(ErrorKind::kPrecondition,
                     "max_resample_attempts must be >= 1");
  }
  if (!(min_retained_area_fraction > 0.0 &&
        min_retained_area_fraction <= 1.0)) {
    return MakeError(ErrorKind::kPrecondition,
                     "min_retained_area_fraction must lie in (0, 1]");
  }
  const double dz = rotation_dead_zone_deg;
  if (!(dz >= 0.0 && rotation_min_deg <= -dz && rotation_max_deg >= dz &&
        rotation_max_deg - rotation_min_deg > 2 * dz)) {
    return MakeError(ErrorKind::kPrecondition,
                     "rotation range must straddle its dead zone");
  }
  if (!(scale_min > 0.0 && scale_min <= scale_dead_low &&
        scale_dead_low <= scale_dead_high && scale_dead_high <= scale_max &&
        (scale_dead_low - scale_min) + (scale_max - scale_dead_high) > 0.0)) {
    return MakeError(ErrorKind::kPrecondition,
                     "scale range must be positive and straddle its dead "
                     "zone");
  }
  return absl::OkStatus();
}

json EditConfig::ToJson() const {
  json mrs = json::array();
  for (Mr mr : enabled_mrs) mrs.push_back(MrTag(mr));
  return {{"step_budget", step_budget},
          {"rotation_range", {rotation_min_deg, rotation_max_deg}},
          {"rotation_dead_zone", rotation_dead_zone_deg},
          {"scale_range", {scale_min, scale_max}},
          {"scale_dead_zone", {scale_dead_low, scale_dead_high}},
          {"enabled_mrs", mrs},
          {"max_resample_attempts", max_resample_attempts},
          {"min_retained_area_fraction", min_retained_area_fraction}};
}

absl::StatusOr<EditConfig> EditConfig::FromJson(const json& doc) {
  EditConfig c;
  if (!doc.is_object()) {
    return MakeError(ErrorKind::kPrecondition, "edit config must be an object");
  }
  try {
    c.step_budget = doc.value("step_budget", c.step_budget);
    if (doc.contains("rotation_range")) {
      c.rotation_min_deg = doc["rotation_range"].at(0).get<double>();
      c.rotation_max_deg = doc["rotation_range"].at(1).get<double>();
    }
    c.rotation_dead_zone_deg =
        doc.value("rotation_dead_zone", c.rotation_dead_zone_deg);
    if (doc.contains("scale_range")) {
      c.scale_min = doc["scale_range"].at(0).get<double>();
      c.scale_max = doc["scale_range"].at(1).get<double>();
    }
    if (doc.contains("scale_dead_zone")) {
      c.scale_dead_low = doc["scale_dead_zone"].at(0).get<double>();
      c.scale_dead_high = doc["scale_dead_zone"].at(1).get<double>();
    }
    if (doc.contains("enabled_mrs")) {
      c.enabled_mrs.clear();
      for (const auto& tag : doc["enabled_mrs"]) {
        LM_ASSIGN_OR_RETURN(Mr mr, ParseMr(tag.get<std::string>()));
        c.enabled_mrs.insert(mr);
      }
    }
    c.max_resample_attempts =
        doc.value("max_resample_attempts", c.max_resample_attempts);
    c.min_retained_area_fraction =
        doc.value("min_retained_area_fraction", c.min_retained_area_fraction);
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kPrecondition,
                     StrCat("edit config: ", e.what()));
  }
  LM_RETURN_IF_ERROR(c.Validate());
  return c;
}

json EditTrace::ToJson() const {
  json out = json::array();
  for (const EditStep& s : steps) {
    json j{{"instance", s.instance_id}, {"mr", MrTag(s.mr)}};
    switch (s.mr) {
      case Mr::kTranslate:
        j["dx"] = s.dx;
        j["dy"] = s.dy;
        break;
      case Mr::kRotate:
        j["theta"] = s.theta_deg;
        break;
      case Mr::kScale:
        j["alpha"] = s.alpha;
        break;
      case Mr::kMirror:
        j["mirror"] = true;
        break;
    }
    out.push_back(std::move(j));
  }
  return out;
}

absl::StatusOr<EditTrace> EditTrace::FromJson(const json& doc) {
  if (!doc.is_array()) {
    return MakeError(ErrorKind::kPrecondition, "trace must be an array");
  }
  EditTrace trace;
  try {
    for (const json& j : doc) {
      EditStep s;
      s.instance_id = j.at("instance").get<std::string>();
      LM_ASSIGN_OR_RETURN(s.mr, ParseMr(j.at("mr").get<std::string>()));
      s.dx = j.value("dx", 0);
      s.dy = j.value("dy", 0);
      s.theta_deg = j.value("theta", 0.0);
      s.alpha = j.value("alpha", 1.0);
      trace.steps.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kPrecondition, StrCat("trace: ", e.what()));
  }
  return trace;
}

ShiftRange LegalShifts(const BoundingBox& box, Canvas canvas) {
  return {-box.x_min, canvas.width - 1 - box.x_max, -box.y_min,
          canvas.height - 1 - box.y_max};
}

absl::StatusOr<ObjectInstance> Translate(const ObjectInstance& obj, int dx,
                                         int dy, Canvas canvas) {
  const ShiftRange r = LegalShifts(obj.bbox(), canvas);
  if (dx < r.dx_min || dx > r.dx_max || dy < r.dy_min || dy > r.dy_max) {
    return MakeError(ErrorKind::kConstraintViolation,
                     StrCat("shift (", dx, ",", dy, ") of ", obj.instance_id(),
                            " leaves the canvas; legal dx [", r.dx_min, ",",
                            r.dx_max, "] dy [", r.dy_min, ",", r.dy_max,
                            "]"));
  }
  const BoundingBox& b = obj.bbox();
  BinaryMask out(canvas.width, canvas.height);
  for (int y = b.y_min; y <= b.y_max; ++y) {
    for (int x = b.x_min; x <= b.x_max; ++x) {
      if (obj.mask().Get(x, y)) out.Set(x + dx, y + dy);
    }
  }
  return obj.WithMask(std::move(out));
}

absl::StatusOr<std::pair<int, int>> SampleTranslation(
    const ObjectInstance& obj, Canvas canvas, std::mt19937_64& rng) {
  const ShiftRange r = LegalShifts(obj.bbox(), canvas);
  const int64_t nx = int64_t{r.dx_max} - r.dx_min + 1;
  const int64_t ny = int64_t{r.dy_max} - r.dy_min + 1;
  if (nx < 1 || ny < 1 || nx * ny <= 1) {
    return MakeError(ErrorKind::kNoLegalMove,
                     StrCat(obj.instance_id(), " ", ToString(obj.bbox()),
                            " cannot move"));
  }
  // Index over all shifts with the zero shift removed.
  const int64_t zero = int64_t{-r.dy_min} * nx + (-r.dx_min);
  int64_t k = std::uniform_int_distribution<int64_t>(0, nx * ny - 2)(rng);
  if (k >= zero) ++k;
  return std::make_pair(static_cast<int>(r.dx_min + k % nx),
                        static_cast<int>(r.dy_min + k / nx));
}

Center ObjectCenter(const ObjectInstance& obj) {
  const BoundingBox& b = obj.bbox();
  return {int64_t{b.x_min} + b.x_max, int64_t{b.y_min} + b.y_max};
}

absl::StatusOr<ObjectInstance> Rotate(const ObjectInstance& obj,
                                      double theta_deg, Canvas canvas,
                                      double* retained) {
  const double rad = theta_deg * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  return Resample(
      obj, canvas, Reach(obj.bbox()),
      [c, s](double dx, double dy) {
        return std::make_pair(c * dx + s * dy, -s * dx + c * dy);
      },
      retained);
}

absl::StatusOr<ObjectInstance> Scale(const ObjectInstance& obj, double alpha,
                                     Canvas canvas, double* retained) {
  if (!(alpha > 0.0)) {
    return MakeError(ErrorKind::kDegenerateTransform,
                     StrCat("scale factor ", alpha, " is not positive"));
  }
  const BoundingBox& b = obj.bbox();
  const double reach =
      (std::max(b.width(), b.height()) / 2.0 + 1.0) * std::max(alpha, 1.0);
  return Resample(
      obj, canvas, reach,
      [alpha](double dx, double dy) {
        return std::make_pair(dx / alpha, dy / alpha);
      },
      retained);
}

ObjectInstance Mirror(const ObjectInstance& obj) {
  const BoundingBox& b = obj.bbox();
  BinaryMask out(obj.mask().width(), obj.mask().height());
  for (int y = b.y_min; y <= b.y_max; ++y) {
    for (int x = b.x_min; x <= b.x_max; ++x) {
      if (obj.mask().Get(x, y)) out.Set(b.x_min + b.x_max - x, y);
    }
  }
  return *obj.WithMask(std::move(out));
}

absl::StatusOr<ObjectInstance> ApplyStep(const ObjectInstance& obj,
                                         const EditStep& step, Canvas canvas,
                                         double* retained) {
  if (retained != nullptr) *retained = 1.0;
  switch (step.mr) {
    case Mr::kTranslate:
      return Translate(obj, step.dx, step.dy, canvas);
    case Mr::kRotate:
      return Rotate(obj, step.theta_deg, canvas, retained);
    case Mr::kScale:
      return Scale(obj, step.alpha, canvas, retained);
    case Mr::kMirror:
      return Mirror(obj);
  }
  return MakeError(ErrorKind::kPrecondition, "bad relation");
}

absl::StatusOr<EditResult> Edit(const SemanticMap& background,
                                const std::vector<ObjectInstance>& singles,
                                const EditConfig& config,
                                std::mt19937_64& rng) {
  LM_RETURN_IF_ERROR(config.Validate());
  if (singles.empty()) {
    return MakeError(ErrorKind::kPrecondition, "no singles to edit");
  }
  const Canvas canvas{background.width(), background.height()};
  for (const auto& s : singles) {
    if (s.mask().width() != canvas.width ||
        s.mask().height() != canvas.height) {
      return MakeError(ErrorKind::kShapeError,
                       StrCat(s.instance_id(), " does not match the canvas"));
    }
  }
  const std::vector<Mr> mrs(config.enabled_mrs.begin(),
                            config.enabled_mrs.end());
  const CandidateSet baseline = CountComponents(Compose(background, singles));

  EditResult result;
  result.singles = singles;
  const int64_t draw_limit =
      int64_t{config.step_budget} * config.max_resample_attempts;
  int64_t draws = 0;
  for (int step = 0; step < config.step_budget; ++step) {
    bool done = false;
    while (!done) {
      const size_t i = std::uniform_int_distribution<size_t>(
          0, result.singles.size() - 1)(rng);
      const Mr mr =
          mrs[std::uniform_int_distribution<size_t>(0, mrs.size() - 1)(rng)];
      const ObjectInstance& obj = result.singles[i];
      for (int attempt = 0; attempt < config.max_resample_attempts;
           ++attempt) {
        if (draws++ >= draw_limit) {
          return MakeError(
              ErrorKind::kEditExhausted,
              StrCat("completed ", step, " of ", config.step_budget,
                     " steps in ", draw_limit, " draws"));
        }
        EditStep candidate{obj.instance_id(), mr};
        switch (mr) {
          case Mr::kTranslate: {
            auto shift = SampleTranslation(obj, canvas, rng);
            if (!shift.ok()) goto repick;  // resampling cannot help
            std::tie(candidate.dx, candidate.dy) = *shift;
            break;
          }
          case Mr::kRotate:
            candidate.theta_deg = SampleOutsideGap(
                config.rotation_min_deg, -config.rotation_dead_zone_deg,
                config.rotation_dead_zone_deg, config.rotation_max_deg, rng);
            break;
          case Mr::kScale:
            candidate.alpha =
                SampleOutsideGap(config.scale_min, config.scale_dead_low,
                                 config.scale_dead_high, config.scale_max, rng);
            break;
          case Mr::kMirror:
            break;
        }
        double retained = 1.0;
        auto edited = ApplyStep(obj, candidate, canvas, &retained);
        if (!edited.ok()) {
          if (IsKind(edited.status(), ErrorKind::kDegenerateTransform)) {
            continue;
          }
          return edited.status();
        }
        if (retained < config.min_retained_area_fraction) continue;
        std::vector<ObjectInstance> next = result.singles;
        next[i] = *std::move(edited);
        SemanticMap composed = Compose(background, next);
        if (CountComponents(composed) != baseline) continue;
        result.singles = std::move(next);
        result.trace.steps.push_back(std::move(candidate));
        done = true;
        break;
      }
    repick:;
    }
  }
  result.map = Compose(background, result.singles);
  return result;
}

absl::StatusOr<EditResult> ReplayTrace(
    const SemanticMap& background, const std::vector<ObjectInstance>& singles,
    const EditTrace& trace) {
  const Canvas canvas{background.width(), background.height()};
  EditResult result;
  result.singles = singles;
  result.trace = trace;
  for (const EditStep& step : trace.steps) {
    auto it = std::find_if(
        result.singles.begin(), result.singles.end(),
        [&](const ObjectInstance& o) {
          return o.instance_id() == step.instance_id;
        });
    if (it == result.singles.end()) {
      return MakeError(ErrorKind::kUnknownTarget,
                       StrCat("trace names unknown single '",
                              step.instance_id, "'"));
    }
    LM_ASSIGN_OR_RETURN(*it, ApplyStep(*it, step, canvas));
  }
  result.map = Compose(background, result.singles);
  return result;
}

}  // namespace layoutmorph
