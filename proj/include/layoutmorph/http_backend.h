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

#ifndef LAYOUTMORPH_HTTP_BACKEND_H_
#define LAYOUTMORPH_HTTP_BACKEND_H_

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <semaphore>
#include <string>

#include "absl/status/statusor.h"
#include "layoutmorph/backends.h"
#include "layoutmorph/wire.h"

namespace layoutmorph {

struct HttpBackendOptions {
  // "http://host:port" with an optional path prefix.
  std::string base_url;
  // Sent as "Authorization: Bearer <token>" when non-empty.
  std::string bearer_token;
  // Passed through on /v1/caption.
  std::string system_id;
  // Per endpoint.
  int max_in_flight = 4;
  // Throttled (HTTP 429) responses are retried with exponential backoff;
  // other errors are not.
  std::chrono::milliseconds backoff_base{500};
  double backoff_factor = 2.0;
  int max_attempts = 5;
  std::chrono::seconds timeout{300};
};

// Client of the backend wire protocol; one instance can serve as any of the
// four stages.
class HttpBackend : public Segmenter,
                    public Inpainter,
                    public MaskToImage,
                    public CaptionService {
 public:
  HttpBackend(PalettePtr palette, HttpBackendOptions options);

  absl::StatusOr<SegmentationResult> Segment(const RgbImage& image) override;
  absl::StatusOr<RgbImage> Inpaint(const RgbImage& image,
                                   const BinaryMask& region) override;
  absl::StatusOr<std::vector<RgbImage>> Translate(
      const SemanticMap& map, const TranslationParams& params) override;
  absl::StatusOr<std::string> Caption(const RgbImage& image) override;

  // Total HTTP attempts made, including retries.
  int attempts() const { return attempts_.load(); }

 private:
  absl::StatusOr<wire::Json> Post(const std::string& path,
                                  const wire::Json& body);

  PalettePtr palette_;
  HttpBackendOptions options_;
  std::string host_;
  std::string path_prefix_;
  // One in-flight limit per endpoint path.
  std::map<std::string, std::unique_ptr<std::counting_semaphore<1024>>>
      slots_;
  std::atomic<int> attempts_{0};
};

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_HTTP_BACKEND_H_
