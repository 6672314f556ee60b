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


// The campaign runner: per seed, segment, pick targets, extract singles;
// per reconstruction, edit, translate, caption with every system and check
// the captions. Records stream to <out>/report.jsonl in a fixed order, so a
// run is reproducible and can resume where it stopped.

#ifndef LAYOUTMORPH_PIPELINE_H_
#define LAYOUTMORPH_PIPELINE_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "layoutmorph/backends.h"
#include "layoutmorph/corpus.h"
#include "layoutmorph/run_config.h"

namespace layoutmorph {

inline constexpr char kReportFile[] = "report.jsonl";

struct StageBackends {
  std::shared_ptr<Segmenter> segmenter;
  std::shared_ptr<Inpainter> inpainter;
  std::shared_ptr<MaskToImage> translator;
  // In config order.
  std::vector<std::pair<std::string, std::shared_ptr<CaptionService>>>
      captioners;
};

// `token` is forwarded as a bearer token to every HTTP backend.
StageBackends MakeBackends(const RunConfig& config, const PalettePtr& palette,
                           const std::string& token);

// SHA-256 of the binary PPM encoding, which depends only on the pixels.
std::string ImageDigest(const RgbImage& image);
std::string MapDigest(const SemanticMap& map);

// Captions on disk under <dir>/<system_id>/<image digest>.json.
class CaptionCache {
 public:
  explicit CaptionCache(std::string dir) : dir_(std::move(dir)) {}

  // Calls `service` only on a miss. Unreadable entries are recomputed and
  // overwritten; `warning` then says so.
  absl::StatusOr<CaptionResult> Get(const std::string& system_id,
                                    const RgbImage& image,
                                    CaptionService& service,
                                    std::string* warning = nullptr);

  int64_t hits() const { return hits_; }
  int64_t misses() const { return misses_; }

 private:
  std::string dir_;
  std::atomic<int64_t> hits_{0};
  std::atomic<int64_t> misses_{0};
  std::atomic<int64_t> temp_counter_{0};
};

struct RunStats {
  int64_t units_total = 0;
  // Units already in the report from an earlier, interrupted run.
  int64_t units_resumed = 0;
  int64_t units_written = 0;
  int64_t cases = 0;
  int64_t skipped_seeds = 0;
  int64_t skipped_reconstructions = 0;
  int64_t cache_hits = 0;
  int64_t cache_misses = 0;
  bool stopped_early = false;
  std::vector<std::string> warnings;
};

absl::StatusOr<RunStats> RunPipeline(const RunConfig& config,
                                     const Corpus& corpus,
                                     const PalettePtr& palette,
                                     StageBackends& backends);

// Loads the palette and corpus named by the config, builds the backends
// and runs. The bearer token comes from LAYOUTMORPH_TOKEN.
absl::StatusOr<RunStats> RunFromConfig(const RunConfig& config);

absl::StatusOr<PalettePtr> LoadPalette(const std::string& path);

// Parses a report, ignoring a torn final line.
absl::StatusOr<std::vector<nlohmann::json>> ReadReport(
    const std::string& path);

struct ReplayResult {
  SemanticMap map;
  std::string recorded_sha256;
  std::string replayed_sha256;
  bool matches() const { return recorded_sha256 == replayed_sha256; }
};

// Re-derives a descendant map from the per-seed artifacts and the case's
// edit trace.
absl::StatusOr<ReplayResult> ReplayCase(const std::string& output_dir,
                                        const std::string& case_id);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_PIPELINE_H_
