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

// Flags generated captions whose objects do not cover the ground truth,
// and sorts each miss into omission, misclassification or a wrong count.

#ifndef LAYOUTMORPH_ERROR_DETECTOR_H_
#define LAYOUTMORPH_ERROR_DETECTOR_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "layoutmorph/caption_parser.h"

namespace layoutmorph {

enum class ViolationKind { kOmission, kMisclassification, kNumericalInaccuracy };

std::string_view ViolationKindName(ViolationKind kind);
absl::StatusOr<ViolationKind> ParseViolationKind(std::string_view name);

struct Violation {
  ViolationKind kind = ViolationKind::kOmission;
  std::string category;
  std::optional<int> expected_num;
  std::optional<int> stated_num;
  std::optional<std::string> substitute;
  std::string evidence;

  nlohmann::json ToJson() const;
  static absl::StatusOr<Violation> FromJson(const nlohmann::json& doc);
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Symmetric "often mistaken for" relation between categories.
class Confusables {
 public:
  Confusables() = default;
  static absl::StatusOr<Confusables> FromJson(std::string_view json);
  static const Confusables& Default();

  bool Are(const std::string& a, const std::string& b) const;
  // Partners of `category` in file order.
  std::vector<std::string> PartnersOf(const std::string& category) const;
  void Add(const std::string& a, const std::string& b);

 private:
  std::map<std::string, std::vector<std::string>> partners_;
};

class ErrorDetector {
 public:
  // Without a palette every unmatched generated entry may stand in for a
  // missing object; with one, only entries naming a palette category can.
  explicit ErrorDetector(Confusables confusables = {},
                         PalettePtr palette = nullptr)
      : confusables_(std::move(confusables)), palette_(std::move(palette)) {}

  std::vector<Violation> Detect(const std::vector<ObjInfo>& s_gt,
                                const std::vector<ObjInfo>& s_gen) const;

  // `missing` has no same-category entry in `s_gen`.
  Violation Categorize(const ObjInfo& missing,
                       const std::vector<ObjInfo>& s_gt,
                       const std::vector<ObjInfo>& s_gen) const;

 private:
  Confusables confusables_;
  PalettePtr palette_;
};

struct CaseVerdict {
  bool abnormal = false;
  std::vector<Violation> violations;
  std::vector<ObjInfo> s_gt;
  std::vector<ObjInfo> s_gen;
};

// Ground truth is the union over all captions, in first-seen order.
absl::StatusOr<CaseVerdict> EvaluateCase(
    const std::vector<std::string>& gt_captions,
    const CandidateSet& candidates, const std::string& generated_caption,
    const TokenTagger& tagger, const CategoryMapper& mapper,
    const ErrorDetector& detector);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_ERROR_DETECTOR_H_
