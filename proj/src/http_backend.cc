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

#include "layoutmorph/http_backend.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "layoutmorph/strings.h"
#include "httplib.h"
#include "layoutmorph/status.h"

namespace layoutmorph {
namespace {

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<1024>& sem) : sem_(sem) {
    sem_.acquire();
  }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

}  // namespace

HttpBackend::HttpBackend(PalettePtr palette, HttpBackendOptions options)
    : palette_(std::move(palette)), options_(std::move(options)) {
  std::string url = options_.base_url;
  while (url.ends_with("/")) url.pop_back();
  const size_t scheme = url.find("://");
  const size_t path_start =
      url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  host_ = url.substr(0, path_start);
  if (path_start != std::string::npos) path_prefix_ = url.substr(path_start);
  for (const char* path : {wire::kSegmentPath, wire::kInpaintPath,
                           wire::kTranslatePath, wire::kCaptionPath}) {
    slots_[path] = std::make_unique<std::counting_semaphore<1024>>(
        std::clamp(options_.max_in_flight, 1, 1024));
  }
}

absl::StatusOr<wire::Json> HttpBackend::Post(const std::string& path,
                                             const wire::Json& body) {
  const std::string payload = body.dump();
  const std::string target = path_prefix_ + path;
  for (int attempt = 1;; ++attempt) {
    httplib::Result res{nullptr, httplib::Error::Unknown};
    {
      SlotGuard slot(*slots_.at(path));
      ++attempts_;
      httplib::Client client(host_);
      client.set_connection_timeout(options_.timeout);
      client.set_read_timeout(options_.timeout);
      client.set_write_timeout(options_.timeout);
      if (!options_.bearer_token.empty()) {
        client.set_bearer_token_auth(options_.bearer_token);
      }
      res = client.Post(target, payload, "application/json");
    }
    if (!res) {
      return MakeError(ErrorKind::kBackendError,
                       StrCat(host_, target, ": transport error: ",
                                    httplib::to_string(res.error())));
    }
    if (res->status == 429) {
      if (attempt >= options_.max_attempts) {
        return MakeError(ErrorKind::kThrottled,
                         StrCat(host_, target, " still throttled after ",
                                      attempt, " attempts"));
      }
      const double delay_ms =
          options_.backoff_base.count() *
          std::pow(options_.backoff_factor, attempt - 1);
      std::this_thread::sleep_for(
          std::chrono::duration<double, std::milli>(delay_ms));
      continue;
    }
    wire::Json parsed =
        wire::Json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    if (res->status >= 400) {
      std::string error = "http error";
      std::string detail = res->body;
      if (!parsed.is_discarded() && parsed.is_object()) {
        error = parsed.value("error", error);
        detail = parsed.value("detail", std::string());
      }
      return MakeError(ErrorKind::kBackendError,
                       StrCat(host_, target, ": HTTP ", res->status,
                                    " ", error, ": ", detail));
    }
    if (parsed.is_discarded()) {
      return MakeError(ErrorKind::kBackendError,
                       StrCat(host_, target, ": response is not JSON"));
    }
    return parsed;
  }
}

absl::StatusOr<SegmentationResult> HttpBackend::Segment(const RgbImage& image) {
  LM_ASSIGN_OR_RETURN(wire::Json body,
                      Post(wire::kSegmentPath, wire::SegmentRequest(image)));
  LM_ASSIGN_OR_RETURN(SegmentationResult result,
                      wire::ParseSegmentResponse(body, palette_));
  if (result.map.width() != image.width() ||
      result.map.height() != image.height()) {
    return MakeError(ErrorKind::kBackendError,
                     "segmentation map size differs from the image");
  }
  return result;
}

absl::StatusOr<RgbImage> HttpBackend::Inpaint(const RgbImage& image,
                                              const BinaryMask& region) {
  if (image.width() != region.width() || image.height() != region.height()) {
    return MakeError(ErrorKind::kShapeError, "region size differs from image");
  }
  LM_ASSIGN_OR_RETURN(
      wire::Json body,
      Post(wire::kInpaintPath, wire::InpaintRequest(image, region)));
  LM_ASSIGN_OR_RETURN(RgbImage out, wire::ParseImageResponse(body));
  if (out.width() != image.width() || out.height() != image.height()) {
    return MakeError(ErrorKind::kBackendError, "inpainted image size changed");
  }
  // Outside the region the input wins, whatever the server sent back.
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!region.Get(x, y)) out.at(x, y) = image.at(x, y);
    }
  }
  return out;
}

absl::StatusOr<std::vector<RgbImage>> HttpBackend::Translate(
    const SemanticMap& map, const TranslationParams& params) {
  LM_RETURN_IF_ERROR(params.Validate());
  LM_ASSIGN_OR_RETURN(
      wire::Json body,
      Post(wire::kTranslatePath, wire::TranslateRequest(map, params)));
  LM_ASSIGN_OR_RETURN(std::vector<RgbImage> images,
                      wire::ParseTranslateResponse(body));
  if (static_cast<int>(images.size()) != params.samples_per_map) {
    return MakeError(ErrorKind::kBackendError,
                     StrCat("expected ", params.samples_per_map,
                                  " images, got ", images.size()));
  }
  for (const RgbImage& image : images) {
    if (image.width() != map.width() || image.height() != map.height()) {
      return MakeError(ErrorKind::kBackendError,
                       "translated image size differs from the map");
    }
  }
  return images;
}

absl::StatusOr<std::string> HttpBackend::Caption(const RgbImage& image) {
  LM_ASSIGN_OR_RETURN(
      wire::Json body,
      Post(wire::kCaptionPath, wire::CaptionRequest(image, options_.system_id)));
  return wire::ParseCaptionResponse(body);
}

}  // namespace layoutmorph
