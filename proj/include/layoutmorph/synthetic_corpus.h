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


// Writes random synthetic scenes as a corpus that IngestCorpus reads back.

#ifndef LAYOUTMORPH_SYNTHETIC_CORPUS_H_
#define LAYOUTMORPH_SYNTHETIC_CORPUS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "absl/status/status.h"
#include "layoutmorph/synthetic_backends.h"
#include "layoutmorph/synthetic_scene.h"

namespace layoutmorph {

struct SyntheticCorpusOptions {
  int scenes = 10;
  uint64_t seed = 0;
  SyntheticSceneOptions scene;
  // When set, it is copied to fault_policy.json and every scene image is
  // captioned with it into ancestor_faults.jsonl.
  std::optional<FaultPolicy> faults;
};

// Layout: images/scene<k>.png, annotations.json with compressed RLE masks
// of the visible instance parts, and palette.json.
absl::Status WriteSyntheticCorpus(const std::string& dir,
                                  const SyntheticCorpusOptions& options,
                                  const PalettePtr& palette);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_SYNTHETIC_CORPUS_H_
