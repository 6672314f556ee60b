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


#include "layoutmorph/summarize.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "layoutmorph/strings.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;

constexpr const char* kKinds[] = {"omission", "misclassification",
                                  "numerical_inaccuracy"};

json Rate(int64_t num, int64_t den) {
  if (den == 0) return nullptr;
  return static_cast<double>(num) / static_cast<double>(den);
}

// Injected fault kinds use the detector's names.
std::string DetectorKind(const std::string& fault_kind) {
  return fault_kind == "miscount" ? "numerical_inaccuracy" : fault_kind;
}

struct Counts {
  int64_t cases = 0;
  int64_t failed = 0;
  int64_t abnormal = 0;
  std::map<std::string, int64_t> violations;
  int64_t with_log = 0;
  int64_t true_positive = 0;
  int64_t false_positive = 0;
  int64_t false_negative = 0;
  int64_t kinds_agree = 0;
  std::map<std::string, Counts> by_mr;

  json ToJson(bool nested) const {
    const int64_t evaluated = cases - failed;
    int64_t total = 0;
    for (const auto& [kind, n] : violations) total += n;
    json kinds = json::object();
    json proportions = json::object();
    for (const char* kind : kKinds) {
      const auto it = violations.find(kind);
      const int64_t n = it == violations.end() ? 0 : it->second;
      kinds[kind] = n;
      proportions[kind] = Rate(n, total);
    }
    json out{{"cases", cases},
             {"failed", failed},
             {"evaluated", evaluated},
             {"abnormal", abnormal},
             {"abnormal_rate", Rate(abnormal, evaluated)},
             {"violations", kinds},
             {"violation_total", total},
             {"violation_proportions", proportions}};
    if (!nested) {
      out["detection"] = {
          {"cases_with_log", with_log},
          {"true_positive", true_positive},
          {"false_positive", false_positive},
          {"false_negative", false_negative},
          {"precision", Rate(true_positive, true_positive + false_positive)},
          {"recall", Rate(true_positive, true_positive + false_negative)},
          {"kind_agreement", Rate(kinds_agree, true_positive)}};
      json mr = json::object();
      for (const auto& [key, c] : by_mr) mr[key] = c.ToJson(true);
      out["by_mr"] = mr;
    }
    return out;
  }
};

void AddCase(const json& result, Counts& c, bool with_detection) {
  ++c.cases;
  if (result.value("status", "") != "ok") {
    ++c.failed;
    return;
  }
  const bool abnormal = result.value("verdict", "") == "abnormal";
  if (abnormal) ++c.abnormal;
  std::set<std::string> found;
  const json violations = result.value("violations", json::array());
  for (const json& v : violations) {
    const std::string kind = v.value("kind", "");
    ++c.violations[kind];
    found.insert(kind);
  }
  if (!with_detection) return;
  const json injected = result.value("injected", json(nullptr));
  if (!injected.is_array()) return;
  ++c.with_log;
  std::set<std::string> truth;
  for (const json& f : injected) truth.insert(DetectorKind(f.value("kind", "")));
  if (abnormal && !truth.empty()) {
    ++c.true_positive;
    if (found == truth) ++c.kinds_agree;
  } else if (abnormal) {
    ++c.false_positive;
  } else if (!truth.empty()) {
    ++c.false_negative;
  }
}

}  // namespace

json Summarize(const std::vector<json>& lines) {
  // variant -> system -> counts
  std::map<std::string, std::map<std::string, Counts>> systems;
  struct ImageCounts {
    int64_t images = 0;
    int64_t flagged = 0;
    int64_t skipped_seeds = 0;
    int64_t skipped_reconstructions = 0;
  };
  std::map<std::string, ImageCounts> images;
  for (const json& line : lines) {
    const std::string variant = line.value("variant", "");
    const std::string kind = line.value("kind", "");
    ImageCounts& ic = images[variant];
    if (kind == "skipped_seed") {
      ++ic.skipped_seeds;
      continue;
    }
    if (kind == "skipped_reconstruction") {
      ++ic.skipped_reconstructions;
      continue;
    }
    if (kind != "case") continue;
    std::vector<std::string> mrs;
    const json mr_list = line.value("mrs", json::array());
    for (const json& m : mr_list) {
      mrs.push_back(m.get<std::string>());
    }
    std::sort(mrs.begin(), mrs.end());
    mrs.erase(std::unique(mrs.begin(), mrs.end()), mrs.end());
    const std::string mr_key = mrs.empty() ? "none" : JoinStrings(mrs, "+");
    ++ic.images;
    bool flagged = false;
    const json results = line.value("systems", json::object());
    for (const auto& [id, result] : results.items()) {
      Counts& c = systems[variant][id];
      AddCase(result, c, true);
      AddCase(result, c.by_mr[mr_key], false);
      flagged = flagged || result.value("verdict", "") == "abnormal";
    }
    if (flagged) ++ic.flagged;
  }
  json out = json::object();
  for (const auto& [variant, ic] : images) {
    json v{{"images", ic.images},
           {"flagged_images", ic.flagged},
           {"image_rate", Rate(ic.flagged, ic.images)},
           {"skipped_seeds", ic.skipped_seeds},
           {"skipped_reconstructions", ic.skipped_reconstructions}};
    json per_system = json::object();
    for (const auto& [id, c] : systems[variant]) per_system[id] = c.ToJson(false);
    v["systems"] = per_system;
    out[variant] = v;
  }
  return out;
}

}  // namespace layoutmorph
