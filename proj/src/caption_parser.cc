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

#include "layoutmorph/caption_parser.h"

#include <cctype>

#include "json.hpp"
#include "layoutmorph/embedded_data.h"
#include "layoutmorph/status.h"
#include "layoutmorph/strings.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '\'';
}

std::optional<Pos> ParsePos(std::string_view name) {
  for (Pos p : {Pos::kNN, Pos::kADJ, Pos::kNUM, Pos::kDET, Pos::kOTHER}) {
    if (PosName(p) == name) return p;
  }
  return std::nullopt;
}

}  // namespace

std::string_view PosName(Pos pos) {
  switch (pos) {
    case Pos::kNN:
      return "NN";
    case Pos::kADJ:
      return "ADJ";
    case Pos::kNUM:
      return "NUM";
    case Pos::kDET:
      return "DET";
    case Pos::kOTHER:
      return "OTHER";
  }
  return "OTHER";
}

std::vector<std::string> Tokenize(std::string_view caption) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    // Hyphens and apostrophes only count inside a word.
    size_t b = current.find_first_not_of("-'");
    size_t e = current.find_last_not_of("-'");
    if (b != std::string::npos) tokens.push_back(current.substr(b, e - b + 1));
    current.clear();
  };
  for (char c : caption) {
    if (IsWordChar(c)) {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

absl::StatusOr<LexiconTagger> LexiconTagger::FromJson(
    std::string_view text, const Cardinals& cardinals) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("tags") ||
      !doc["tags"].is_object()) {
    return absl::InvalidArgumentError(
        "tagger lexicon: expected {\"tags\": {POS: [words]}}");
  }
  LexiconTagger tagger;
  tagger.cardinals_ = &cardinals;
  for (const auto& [name, words] : doc["tags"].items()) {
    std::optional<Pos> pos = ParsePos(name);
    if (!pos.has_value() || !words.is_array()) {
      return absl::InvalidArgumentError(
          StrCat("tagger lexicon: bad tag '", name, "'"));
    }
    for (const auto& w : words) {
      if (!w.is_string()) {
        return absl::InvalidArgumentError("tagger lexicon: non-string word");
      }
      tagger.lexicon_[ToLower(w.get<std::string>())] = *pos;
    }
  }
  return tagger;
}

const LexiconTagger& LexiconTagger::Default() {
  static const LexiconTagger* tagger =
      new LexiconTagger(*LexiconTagger::FromJson(embedded::kTaggerLexiconJson));
  return *tagger;
}

Pos LexiconTagger::TagWord(const std::string& word) const {
  if (auto it = lexicon_.find(word); it != lexicon_.end()) return it->second;
  if (cardinals_->Parse(word).has_value()) return Pos::kNUM;
  if (word.size() > 2 && word.ends_with("s") && !word.ends_with("ss")) {
    return Pos::kNN;
  }
  if (word.size() > 3 && (word.ends_with("y") || word.ends_with("ful"))) {
    return Pos::kADJ;
  }
  return Pos::kOTHER;
}

absl::StatusOr<std::vector<TaggedToken>> LexiconTagger::Tag(
    std::string_view caption) const {
  std::vector<std::string> words = Tokenize(caption);
  if (words.empty()) {
    return MakeError(ErrorKind::kPrecondition, "empty caption");
  }
  std::vector<TaggedToken> out;
  out.reserve(words.size());
  for (std::string& w : words) {
    const Pos pos = TagWord(w);
    out.push_back({std::move(w), pos});
  }
  return out;
}

std::optional<int> Word2Num(std::string_view word,
                            const Cardinals& cardinals) {
  const std::string w = ToLower(word);
  if (w == "a" || w == "an") return 1;
  return cardinals.Parse(w);
}

std::vector<std::pair<Nnpm, ObjInfo>> ExtractPhrases(
    const std::vector<TaggedToken>& tokens, const Cardinals& cardinals) {
  std::vector<std::pair<Nnpm, ObjInfo>> out;
  size_t i = 0;
  while (i < tokens.size()) {
    Nnpm phrase;
    size_t start = i;
    size_t j = i;
    if (tokens[i].pos == Pos::kADJ && i + 1 < tokens.size() &&
        tokens[i + 1].pos == Pos::kNN) {
      phrase.modifier = tokens[i].text;
      j = i + 1;
    } else if (tokens[i].pos != Pos::kNN) {
      ++i;
      continue;
    }
    phrase.noun_begin = j;
    while (j < tokens.size() && tokens[j].pos == Pos::kNN) {
      phrase.nouns.push_back(tokens[j].text);
      ++j;
    }
    phrase.noun_end = j;
    std::vector<std::string> words;
    if (phrase.modifier) words.push_back(*phrase.modifier);
    words.insert(words.end(), phrase.nouns.begin(), phrase.nouns.end());
    phrase.surface = JoinStrings(words, " ");

    ObjInfo info{phrase.surface, 1, false};
    if (start > 0) {
      if (auto n = Word2Num(tokens[start - 1].text, cardinals)) {
        info.num = *n;
        info.has_num = true;
      }
    }
    out.emplace_back(std::move(phrase), std::move(info));
    i = j;
  }
  return out;
}

absl::StatusOr<std::vector<ObjInfo>> PosTagExtract(std::string_view caption,
                                                   const TokenTagger& tagger,
                                                   const Cardinals& cardinals) {
  LM_ASSIGN_OR_RETURN(std::vector<TaggedToken> tokens, tagger.Tag(caption));
  std::vector<ObjInfo> out;
  for (auto& [phrase, info] : ExtractPhrases(tokens, cardinals)) {
    out.push_back(std::move(info));
  }
  return out;
}

LexiconMapper::LexiconMapper(PalettePtr palette,
                             std::map<std::string, std::string> synonyms,
                             Inflector inflector)
    : palette_(std::move(palette)),
      synonyms_(std::move(synonyms)),
      inflector_(std::move(inflector)) {}

absl::StatusOr<LexiconMapper> LexiconMapper::FromJson(
    PalettePtr palette, std::string_view text, const Inflector& inflector) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("synonyms") ||
      !doc["synonyms"].is_object()) {
    return absl::InvalidArgumentError(
        "synonyms: expected {\"synonyms\": {word: category}}");
  }
  std::map<std::string, std::string> synonyms;
  for (const auto& [word, category] : doc["synonyms"].items()) {
    if (!category.is_string() ||
        !palette->HasCategory(category.get<std::string>())) {
      return MakeError(ErrorKind::kPaletteMismatch,
                       StrCat("synonym '", word, "' targets no category"));
    }
    synonyms[ToLower(word)] = category.get<std::string>();
  }
  return LexiconMapper(std::move(palette), std::move(synonyms), inflector);
}

const LexiconMapper& LexiconMapper::Default() {
  static const LexiconMapper* mapper = new LexiconMapper(
      *LexiconMapper::FromJson(DefaultPalette(), embedded::kSynonymsJson));
  return *mapper;
}

std::optional<std::string> LexiconMapper::Resolve(
    const std::string& phrase) const {
  if (palette_->HasCategory(phrase)) return phrase;
  if (auto it = synonyms_.find(phrase); it != synonyms_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::optional<std::string> LexiconMapper::Map(
    std::string_view name, const CandidateSet* candidates) const {
  const std::vector<std::string> words = Tokenize(name);
  if (words.empty()) return std::nullopt;
  const std::string& head = words.back();
  for (size_t first = 0; first < words.size(); ++first) {
    std::string stem;
    for (size_t k = first; k + 1 < words.size(); ++k) {
      stem += words[k];
      stem += ' ';
    }
    for (const std::string& form : inflector_.SingularCandidates(head)) {
      std::optional<std::string> category = Resolve(stem + form);
      if (!category.has_value()) continue;
      if (candidates != nullptr && !candidates->count(*category)) {
        return std::nullopt;
      }
      return category;
    }
  }
  return std::nullopt;
}

absl::StatusOr<std::vector<ObjInfo>> ObjsExtract(
    std::string_view caption, const CandidateSet* candidates,
    CaptionSource source, const TokenTagger& tagger,
    const CategoryMapper& mapper, const Cardinals& cardinals) {
  if (source == CaptionSource::kGroundTruth && candidates == nullptr) {
    return MakeError(ErrorKind::kMissingCandidates,
                     "ground-truth parsing needs a candidate set");
  }
  LM_ASSIGN_OR_RETURN(std::vector<ObjInfo> parsed,
                      PosTagExtract(caption, tagger, cardinals));
  std::vector<ObjInfo> out;
  if (source == CaptionSource::kGenerated) {
    for (ObjInfo& info : parsed) {
      if (auto category = mapper.Map(info.name, nullptr)) {
        info.name = *category;
      }
      out.push_back(std::move(info));
    }
    return out;
  }
  std::set<std::string> seen;
  for (const ObjInfo& info : parsed) {
    std::optional<std::string> category = mapper.Map(info.name, candidates);
    if (!category.has_value() || !seen.insert(*category).second) continue;
    // Quantities come from segmentation, not from the caption.
    out.push_back({*category, candidates->at(*category), true});
  }
  return out;
}

}  // namespace layoutmorph
