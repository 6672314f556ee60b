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


// Everything a campaign run needs, loaded from a JSON config file and
// overridden from the command line.

#ifndef LAYOUTMORPH_RUN_CONFIG_H_
#define LAYOUTMORPH_RUN_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "layoutmorph/backends.h"
#include "layoutmorph/layout_editor.h"
#include "layoutmorph/mask_extractor.h"
#include "layoutmorph/synthetic_backends.h"

namespace layoutmorph {

// "synthetic" or "http:<base url>".
struct BackendSpec {
  bool http = false;
  std::string url;

  std::string ToString() const;
  static absl::StatusOr<BackendSpec> Parse(std::string_view text);
};

struct SystemSpec {
  std::string id;
  BackendSpec backend;
  // Used by synthetic captioners only.
  FaultPolicy fault_policy;
};

struct RunConfig {
  std::string corpus_path;
  // Empty selects the built-in palette.
  std::string palette_path;
  // Word tables for caption parsing and detection; empty selects the
  // built-in ones.
  std::string tagger_lexicon_path;
  std::string synonyms_path;
  std::string confusables_path;
  BackendSpec segmenter;
  BackendSpec inpainter;
  BackendSpec translator;
  std::vector<SystemSpec> systems;
  int reconstructions_per_seed = 10;
  TranslationParams translation;
  EditConfig edit;
  ExtractionConfig extraction;
  uint64_t master_seed = 0;
  std::string output_dir = "out";
  // Empty puts the caption cache under the output directory.
  std::string cache_dir;
  int max_concurrency = 1;
  // Tag written into every record; "full" or the MR of an ablation.
  std::string variant = "full";
  // Stops after this many work units have been written, as if killed.
  // Negative means run to completion.
  int64_t stop_after_units = -1;

  absl::Status Validate() const;
  std::string CacheDir() const;
  nlohmann::json ToJson() const;
  // Unknown keys are rejected so typos do not silently fall back to
  // defaults. Relative paths resolve against `base_dir`.
  static absl::StatusOr<RunConfig> FromJson(const nlohmann::json& doc,
                                            const std::string& base_dir = "");
};

// "synthetic", "http:URL", or per stage: "segment=..,inpaint=..,translate=..".
absl::Status ApplyBackendsFlag(std::string_view flag, RunConfig& config);

// Comma-separated "id=synthetic", "id=synthetic:policy.json" or
// "id=http:URL" entries.
absl::StatusOr<std::vector<SystemSpec>> ParseSystemsFlag(std::string_view flag);

// The ablation variant: only `mr`, one step per reconstruction.
RunConfig AblationConfig(const RunConfig& base, Mr mr);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_RUN_CONFIG_H_
