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

#include "layoutmorph/error_detector.h"

#include <algorithm>

#include "layoutmorph/embedded_data.h"
#include "layoutmorph/status.h"
#include "layoutmorph/strings.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;

}  // namespace

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kOmission:
      return "omission";
    case ViolationKind::kMisclassification:
      return "misclassification";
    case ViolationKind::kNumericalInaccuracy:
      return "numerical_inaccuracy";
  }
  return "omission";
}

absl::StatusOr<ViolationKind> ParseViolationKind(std::string_view name) {
  for (ViolationKind k :
       {ViolationKind::kOmission, ViolationKind::kMisclassification,
        ViolationKind::kNumericalInaccuracy}) {
    if (ViolationKindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(StrCat("unknown violation kind ", name));
}

json Violation::ToJson() const {
  json j{{"kind", ViolationKindName(kind)}, {"category", category}};
  if (expected_num) j["expected_num"] = *expected_num;
  if (stated_num) j["stated_num"] = *stated_num;
  if (substitute) j["substitute"] = *substitute;
  j["evidence"] = evidence;
  return j;
}

absl::StatusOr<Violation> Violation::FromJson(const json& doc) {
  Violation v;
  try {
    LM_ASSIGN_OR_RETURN(v.kind,
                        ParseViolationKind(doc.at("kind").get<std::string>()));
    v.category = doc.at("category").get<std::string>();
    if (doc.contains("expected_num")) {
      v.expected_num = doc["expected_num"].get<int>();
    }
    if (doc.contains("stated_num")) v.stated_num = doc["stated_num"].get<int>();
    if (doc.contains("substitute")) {
      v.substitute = doc["substitute"].get<std::string>();
    }
    v.evidence = doc.value("evidence", "");
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(StrCat("violation: ", e.what()));
  }
  return v;
}

absl::StatusOr<Confusables> Confusables::FromJson(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::InvalidArgumentError("confusables: expected a JSON object");
  }
  Confusables c;
  if (!doc.contains("confusables")) return c;
  try {
    for (const auto& [category, list] : doc["confusables"].items()) {
      for (const auto& other : list) c.Add(category, other.get<std::string>());
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(StrCat("confusables: ", e.what()));
  }
  return c;
}

const Confusables& Confusables::Default() {
  static const Confusables* c =
      new Confusables(*Confusables::FromJson(embedded::kConfusablesJson));
  return *c;
}

void Confusables::Add(const std::string& a, const std::string& b) {
  auto add = [this](const std::string& x, const std::string& y) {
    auto& list = partners_[x];
    if (std::find(list.begin(), list.end(), y) == list.end()) {
      list.push_back(y);
    }
  };
  add(a, b);
  add(b, a);
}

bool Confusables::Are(const std::string& a, const std::string& b) const {
  auto it = partners_.find(a);
  return it != partners_.end() &&
         std::find(it->second.begin(), it->second.end(), b) !=
             it->second.end();
}

std::vector<std::string> Confusables::PartnersOf(
    const std::string& category) const {
  auto it = partners_.find(category);
  return it == partners_.end() ? std::vector<std::string>{} : it->second;
}

Violation ErrorDetector::Categorize(const ObjInfo& missing,
                                    const std::vector<ObjInfo>& s_gt,
                                    const std::vector<ObjInfo>& s_gen) const {
  std::set<std::string> gt_names;
  for (const ObjInfo& o : s_gt) gt_names.insert(o.name);
  std::vector<const ObjInfo*> unmatched;
  std::set<std::string> unmatched_names;
  for (const ObjInfo& o : s_gen) {
    if (gt_names.count(o.name)) continue;
    if (palette_ != nullptr && !palette_->HasCategory(o.name)) continue;
    if (unmatched_names.insert(o.name).second) unmatched.push_back(&o);
  }
  const ObjInfo* substitute = nullptr;
  for (const ObjInfo* o : unmatched) {
    if (confusables_.Are(missing.name, o->name)) {
      substitute = o;
      break;
    }
  }
  if (substitute == nullptr && unmatched.size() == 1) {
    substitute = unmatched.front();
  }
  Violation v;
  v.category = missing.name;
  v.expected_num = missing.num;
  if (substitute == nullptr) {
    v.kind = ViolationKind::kOmission;
    return v;
  }
  v.kind = ViolationKind::kMisclassification;
  v.substitute = substitute->name;
  if (substitute->has_num) v.stated_num = substitute->num;
  return v;
}

std::vector<Violation> ErrorDetector::Detect(
    const std::vector<ObjInfo>& s_gt,
    const std::vector<ObjInfo>& s_gen) const {
  std::vector<Violation> out;
  for (const ObjInfo& gt : s_gt) {
    int stated = 0;
    bool matched = false;
    bool gated = true;
    for (const ObjInfo& gen : s_gen) {
      if (gen.name != gt.name) continue;
      matched = true;
      // Several mentions ("a man and a woman") add up; one vague mention
      // turns the count check off.
      gated = gated && gen.has_num;
      stated += gen.num;
    }
    if (!matched) {
      out.push_back(Categorize(gt, s_gt, s_gen));
    } else if (gated && stated != gt.num) {
      out.push_back({ViolationKind::kNumericalInaccuracy, gt.name, gt.num,
                     stated, std::nullopt, ""});
    }
  }
  return out;
}

absl::StatusOr<CaseVerdict> EvaluateCase(
    const std::vector<std::string>& gt_captions,
    const CandidateSet& candidates, const std::string& generated_caption,
    const TokenTagger& tagger, const CategoryMapper& mapper,
    const ErrorDetector& detector) {
  CaseVerdict verdict;
  std::set<std::string> seen;
  for (const std::string& caption : gt_captions) {
    LM_ASSIGN_OR_RETURN(std::vector<ObjInfo> objs,
                        ObjsExtract(caption, &candidates,
                                    CaptionSource::kGroundTruth, tagger,
                                    mapper));
    for (ObjInfo& o : objs) {
      if (seen.insert(o.name).second) verdict.s_gt.push_back(std::move(o));
    }
  }
  LM_ASSIGN_OR_RETURN(verdict.s_gen,
                      ObjsExtract(generated_caption, nullptr,
                                  CaptionSource::kGenerated, tagger, mapper));
  verdict.violations = detector.Detect(verdict.s_gt, verdict.s_gen);
  for (Violation& v : verdict.violations) v.evidence = generated_caption;
  verdict.abnormal = !verdict.violations.empty();
  return verdict;
}

}  // namespace layoutmorph
