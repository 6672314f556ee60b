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


#include "layoutmorph/run_config.h"

#include <filesystem>
#include <set>

#include "layoutmorph/codec.h"
#include "layoutmorph/status.h"
#include "layoutmorph/strings.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;

absl::Status ConfigError(std::string_view what) {
  return MakeError(ErrorKind::kPrecondition, StrCat("config: ", what));
}

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (base_dir.empty() || path.empty() ||
      std::filesystem::path(path).is_absolute()) {
    return path;
  }
  return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

absl::StatusOr<FaultPolicy> LoadPolicy(const std::string& path) {
  LM_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  auto policy = FaultPolicy::FromJson(text);
  if (!policy.ok()) {
    return ConfigError(StrCat(path, ": ", MessageOf(policy.status())));
  }
  return policy;
}

absl::StatusOr<SystemSpec> SystemFromJson(const json& j,
                                          const std::string& base_dir) {
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
    return ConfigError("each system needs a string 'id'");
  }
  SystemSpec s;
  s.id = j["id"].get<std::string>();
  LM_ASSIGN_OR_RETURN(s.backend,
                      BackendSpec::Parse(j.value("backend", "synthetic")));
  if (j.contains("fault_policy")) {
    const json& p = j["fault_policy"];
    if (p.is_string()) {
      LM_ASSIGN_OR_RETURN(s.fault_policy,
                          LoadPolicy(Resolve(base_dir, p.get<std::string>())));
    } else {
      auto policy = FaultPolicy::FromJson(p.dump());
      if (!policy.ok()) return ConfigError(MessageOf(policy.status()));
      s.fault_policy = *std::move(policy);
    }
  }
  return s;
}

}  // namespace

std::string BackendSpec::ToString() const {
  return http ? StrCat("http:", url) : "synthetic";
}

absl::StatusOr<BackendSpec> BackendSpec::Parse(std::string_view text) {
  if (text == "synthetic") return BackendSpec{};
  if (text.substr(0, 5) == "http:" && text.size() > 5) {
    return BackendSpec{true, std::string(text.substr(5))};
  }
  return ConfigError(
      StrCat("backend '", text, "' is neither synthetic nor http:URL"));
}

absl::Status RunConfig::Validate() const {
  if (reconstructions_per_seed < 1) {
    return ConfigError("reconstructions_per_seed must be >= 1");
  }
  if (systems.empty()) return ConfigError("at least one IC system is needed");
  std::set<std::string> ids;
  for (const SystemSpec& s : systems) {
    if (s.id.empty() || s.id.find_first_of("/\\. ") != std::string::npos) {
      return ConfigError(StrCat("system id '", s.id,
                                "' must be non-empty without / \\ . or "
                                "spaces"));
    }
    if (!ids.insert(s.id).second) {
      return ConfigError(StrCat("duplicate system id '", s.id, "'"));
    }
  }
  if (max_concurrency < 1) return ConfigError("jobs must be >= 1");
  if (output_dir.empty()) return ConfigError("output directory is empty");
  LM_RETURN_IF_ERROR(translation.Validate());
  LM_RETURN_IF_ERROR(edit.Validate());
  LM_RETURN_IF_ERROR(extraction.Validate());
  return absl::OkStatus();
}

std::string RunConfig::CacheDir() const {
  if (!cache_dir.empty()) return cache_dir;
  return (std::filesystem::path(output_dir) / "cache").string();
}

json RunConfig::ToJson() const {
  json systems_json = json::array();
  for (const SystemSpec& s : systems) {
    json j{{"id", s.id}, {"backend", s.backend.ToString()}};
    if (!s.backend.http) {
      j["fault_policy"] = json::parse(s.fault_policy.ToJson());
    }
    systems_json.push_back(std::move(j));
  }
  return {{"corpus", corpus_path},
          {"palette", palette_path},
          {"lexicons",
           {{"tagger", tagger_lexicon_path},
            {"synonyms", synonyms_path},
            {"confusables", confusables_path}}},
          {"backends",
           {{"segment", segmenter.ToString()},
            {"inpaint", inpainter.ToString()},
            {"translate", translator.ToString()}}},
          {"systems", systems_json},
          {"reconstructions_per_seed", reconstructions_per_seed},
          {"translation",
           {{"guidance_strength", translation.guidance_strength},
            {"diffusion_steps", translation.diffusion_steps},
            {"samples_per_map", translation.samples_per_map}}},
          {"edit", edit.ToJson()},
          {"extraction",
           {{"dilation_kernel", extraction.dilation_kernel},
            {"dilation_iterations", extraction.dilation_iterations},
            {"max_resegment_retries", extraction.max_resegment_retries}}},
          {"master_seed", master_seed},
          {"out", output_dir},
          {"cache", cache_dir},
          {"jobs", max_concurrency},
          {"variant", variant}};
}

absl::StatusOr<RunConfig> RunConfig::FromJson(const json& doc,
                                              const std::string& base_dir) {
  if (!doc.is_object()) return ConfigError("must be a JSON object");
  static const std::set<std::string> kKeys = {
      "corpus",      "palette",    "lexicons",    "backends",    "systems",
      "reconstructions_per_seed",  "translation", "edit",
      "extraction",  "master_seed", "out",        "cache",
      "jobs",        "variant"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.count(key)) return ConfigError(StrCat("unknown key '", key, "'"));
  }
  RunConfig c;
  try {
    c.corpus_path = Resolve(base_dir, doc.value("corpus", ""));
    c.palette_path = Resolve(base_dir, doc.value("palette", ""));
    if (doc.contains("lexicons")) {
      const json& l = doc["lexicons"];
      for (const auto& [key, value] : l.items()) {
        if (key != "tagger" && key != "synonyms" && key != "confusables") {
          return ConfigError(StrCat("unknown lexicon '", key, "'"));
        }
      }
      c.tagger_lexicon_path = Resolve(base_dir, l.value("tagger", ""));
      c.synonyms_path = Resolve(base_dir, l.value("synonyms", ""));
      c.confusables_path = Resolve(base_dir, l.value("confusables", ""));
    }
    if (doc.contains("backends")) {
      const json& b = doc["backends"];
      if (b.is_string()) {
        LM_RETURN_IF_ERROR(ApplyBackendsFlag(b.get<std::string>(), c));
      } else {
        LM_ASSIGN_OR_RETURN(c.segmenter,
                            BackendSpec::Parse(b.value("segment", "synthetic")));
        LM_ASSIGN_OR_RETURN(c.inpainter,
                            BackendSpec::Parse(b.value("inpaint", "synthetic")));
        LM_ASSIGN_OR_RETURN(
            c.translator, BackendSpec::Parse(b.value("translate", "synthetic")));
      }
    }
    for (const json& s : doc.value("systems", json::array())) {
      LM_ASSIGN_OR_RETURN(SystemSpec spec, SystemFromJson(s, base_dir));
      c.systems.push_back(std::move(spec));
    }
    c.reconstructions_per_seed =
        doc.value("reconstructions_per_seed", c.reconstructions_per_seed);
    if (doc.contains("translation")) {
      const json& t = doc["translation"];
      c.translation.guidance_strength =
          t.value("guidance_strength", c.translation.guidance_strength);
      c.translation.diffusion_steps =
          t.value("diffusion_steps", c.translation.diffusion_steps);
      c.translation.samples_per_map =
          t.value("samples_per_map", c.translation.samples_per_map);
    }
    if (doc.contains("edit")) {
      LM_ASSIGN_OR_RETURN(c.edit, EditConfig::FromJson(doc["edit"]));
    }
    if (doc.contains("extraction")) {
      const json& e = doc["extraction"];
      c.extraction.dilation_kernel =
          e.value("dilation_kernel", c.extraction.dilation_kernel);
      c.extraction.dilation_iterations =
          e.value("dilation_iterations", c.extraction.dilation_iterations);
      c.extraction.max_resegment_retries =
          e.value("max_resegment_retries", c.extraction.max_resegment_retries);
    }
    c.master_seed = doc.value("master_seed", c.master_seed);
    c.output_dir = Resolve(base_dir, doc.value("out", c.output_dir));
    c.cache_dir = Resolve(base_dir, doc.value("cache", c.cache_dir));
    c.max_concurrency = doc.value("jobs", c.max_concurrency);
    c.variant = doc.value("variant", c.variant);
  } catch (const json::exception& e) {
    return ConfigError(e.what());
  }
  return c;
}

absl::Status ApplyBackendsFlag(std::string_view flag, RunConfig& config) {
  if (flag.find('=') == std::string_view::npos) {
    LM_ASSIGN_OR_RETURN(BackendSpec all, BackendSpec::Parse(flag));
    config.segmenter = config.inpainter = config.translator = all;
    return absl::OkStatus();
  }
  for (const std::string& part : SplitString(flag, ',')) {
    const size_t eq = part.find('=');
    if (eq == std::string::npos) {
      return ConfigError(StrCat("backend entry '", part, "' lacks '='"));
    }
    const std::string stage = part.substr(0, eq);
    LM_ASSIGN_OR_RETURN(BackendSpec spec, BackendSpec::Parse(part.substr(eq + 1)));
    if (stage == "segment") {
      config.segmenter = spec;
    } else if (stage == "inpaint") {
      config.inpainter = spec;
    } else if (stage == "translate") {
      config.translator = spec;
    } else {
      return ConfigError(StrCat("unknown stage '", stage,
                                "', want segment, inpaint or translate"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<SystemSpec>> ParseSystemsFlag(std::string_view flag) {
  std::vector<SystemSpec> out;
  for (const std::string& part : SplitString(flag, ',')) {
    const size_t eq = part.find('=');
    if (eq == std::string::npos || eq == 0) {
      return ConfigError(StrCat("system entry '", part, "' must be id=backend"));
    }
    SystemSpec s;
    s.id = part.substr(0, eq);
    const std::string rest = part.substr(eq + 1);
    constexpr std::string_view kSyntheticWithPolicy = "synthetic:";
    if (rest.rfind(kSyntheticWithPolicy, 0) == 0) {
      LM_ASSIGN_OR_RETURN(
          s.fault_policy,
          LoadPolicy(rest.substr(kSyntheticWithPolicy.size())));
    } else {
      LM_ASSIGN_OR_RETURN(s.backend, BackendSpec::Parse(rest));
    }
    out.push_back(std::move(s));
  }
  return out;
}

RunConfig AblationConfig(const RunConfig& base, Mr mr) {
  RunConfig c = base;
  c.edit.enabled_mrs = {mr};
  c.edit.step_budget = 1;
  c.variant = MrTag(mr);
  return c;
}

}  // namespace layoutmorph
