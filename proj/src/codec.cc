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

#include "layoutmorph/codec.h"

#include <openssl/sha.h>
#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include "absl/strings/escaping.h"
#include "layoutmorph/strings.h"
#include "json.hpp"
#include "layoutmorph/status.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;

absl::Status PgmError(std::string_view what) {
  return MakeError(ErrorKind::kShapeError, StrCat("bad PGM: ", what));
}

// Reads the next whitespace-delimited header token, skipping '#' comments.
bool NextToken(std::string_view bytes, size_t& pos, std::string& token) {
  token.clear();
  while (pos < bytes.size()) {
    char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  while (pos < bytes.size() &&
         !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    token.push_back(bytes[pos++]);
  }
  return !token.empty();
}

bool ParsePositive(const std::string& token, int& out) {
  if (token.empty() || token.size() > 9) return false;
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  out = std::stoi(token);
  return out > 0;
}

}  // namespace

std::string EncodePgm(const GrayImage& image) {
  std::string out = StrCat("P5\n", image.width, " ", image.height,
                                 "\n255\n");
  out.append(reinterpret_cast<const char*>(image.values.data()),
             image.values.size());
  return out;
}

absl::StatusOr<GrayImage> DecodePgm(std::string_view bytes) {
  size_t pos = 0;
  std::string token;
  if (!NextToken(bytes, pos, token) || token != "P5") {
    return PgmError("missing P5 magic");
  }
  GrayImage image;
  int maxval = 0;
  if (!NextToken(bytes, pos, token) || !ParsePositive(token, image.width)) {
    return PgmError("width");
  }
  if (!NextToken(bytes, pos, token) || !ParsePositive(token, image.height)) {
    return PgmError("height");
  }
  if (!NextToken(bytes, pos, token) || !ParsePositive(token, maxval) ||
      maxval > 255) {
    return PgmError("maxval must be in 1..255");
  }
  // Exactly one whitespace byte separates the header from the raster.
  ++pos;
  const size_t n = static_cast<size_t>(image.width) * image.height;
  if (pos > bytes.size() || bytes.size() - pos != n) {
    return PgmError(StrCat("expected ", n, " raster bytes"));
  }
  image.values.assign(bytes.begin() + pos, bytes.end());
  return image;
}

std::string EncodeMapPgm(const SemanticMap& map) {
  return EncodePgm({map.width(), map.height(), map.labels()});
}

absl::StatusOr<SemanticMap> DecodeMapPgm(std::string_view bytes,
                                         PalettePtr palette) {
  LM_ASSIGN_OR_RETURN(GrayImage gray, DecodePgm(bytes));
  return SemanticMap::Create(gray.width, gray.height, std::move(gray.values),
                             std::move(palette));
}

std::string EncodeMaskPgm(const BinaryMask& mask) {
  GrayImage gray{mask.width(), mask.height(), {}};
  gray.values.reserve(mask.bits().size());
  for (uint8_t b : mask.bits()) gray.values.push_back(b ? 255 : 0);
  return EncodePgm(gray);
}

absl::StatusOr<BinaryMask> DecodeMaskPgm(std::string_view bytes) {
  LM_ASSIGN_OR_RETURN(GrayImage gray, DecodePgm(bytes));
  BinaryMask mask(gray.width, gray.height);
  for (int y = 0; y < gray.height; ++y) {
    for (int x = 0; x < gray.width; ++x) {
      if (gray.values[static_cast<size_t>(y) * gray.width + x] != 0) {
        mask.Set(x, y);
      }
    }
  }
  return mask;
}

std::string EncodePng(const RgbImage& image) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = image.width();
  png.height = image.height();
  png.format = PNG_FORMAT_RGB;
  const std::vector<uint8_t> raw = image.Bytes();
  png_alloc_size_t size = 0;
  png_image_write_to_memory(&png, nullptr, &size, 0, raw.data(), 0, nullptr);
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&png, out.data(), &size, 0, raw.data(), 0,
                                 nullptr)) {
    return {};
  }
  out.resize(size);
  return out;
}

absl::StatusOr<RgbImage> DecodePng(std::string_view bytes) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
    return MakeError(ErrorKind::kShapeError,
                     StrCat("bad PNG: ", png.message));
  }
  png.format = PNG_FORMAT_RGB;
  std::vector<uint8_t> raw(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, raw.data(), 0, nullptr)) {
    std::string message = png.message;
    png_image_free(&png);
    return MakeError(ErrorKind::kShapeError,
                     StrCat("bad PNG: ", message));
  }
  RgbImage image(static_cast<int>(png.width), static_cast<int>(png.height));
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const size_t i = (static_cast<size_t>(y) * image.width() + x) * 3;
      image.at(x, y) = {raw[i], raw[i + 1], raw[i + 2]};
    }
  }
  return image;
}

std::string PaletteToJson(const CategoryPalette& palette) {
  json entries = json::array();
  for (const auto& e : palette.entries()) {
    entries.push_back({{"name", e.name},
                       {"index", e.index},
                       {"color", {e.color.r, e.color.g, e.color.b}}});
  }
  return json{{"palette", entries}}.dump();
}

absl::StatusOr<CategoryPalette> ParsePaletteJson(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("palette") ||
      !doc["palette"].is_array()) {
    return MakeError(ErrorKind::kPaletteMismatch,
                     "palette JSON must be {\"palette\": [...]}");
  }
  std::vector<PaletteEntry> entries;
  for (const json& e : doc["palette"]) {
    if (!e.is_object() || !e.contains("name") || !e["name"].is_string() ||
        !e.contains("index") || !e["index"].is_number_integer() ||
        !e.contains("color") || !e["color"].is_array() ||
        e["color"].size() != 3) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("malformed palette entry ", e.dump()));
    }
    const int index = e["index"].get<int>();
    if (index < 1 || index > 255) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("label index out of 1..255: ", index));
    }
    int rgb[3];
    for (int c = 0; c < 3; ++c) {
      if (!e["color"][c].is_number_integer()) {
        return MakeError(ErrorKind::kPaletteMismatch, "color must be ints");
      }
      rgb[c] = e["color"][c].get<int>();
      if (rgb[c] < 0 || rgb[c] > 255) {
        return MakeError(ErrorKind::kPaletteMismatch, "color out of range");
      }
    }
    entries.push_back({e["name"].get<std::string>(), static_cast<Label>(index),
                       {static_cast<uint8_t>(rgb[0]),
                        static_cast<uint8_t>(rgb[1]),
                        static_cast<uint8_t>(rgb[2])}});
  }
  return CategoryPalette::Create(std::move(entries));
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(),
         digest);
  return absl::BytesToHexString(std::string(
      reinterpret_cast<const char*>(digest), SHA256_DIGEST_LENGTH));
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(StrCat("cannot open ", path));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(StrCat("cannot write ", path));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  return out ? absl::OkStatus()
             : absl::DataLossError(StrCat("short write to ", path));
}

}  // namespace layoutmorph
