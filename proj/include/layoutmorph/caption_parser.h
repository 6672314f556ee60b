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

// Caption parsing: tag tokens, pull out noun phrases with their stated
// quantities, and map phrase heads onto palette categories.

#ifndef LAYOUTMORPH_CAPTION_PARSER_H_
#define LAYOUTMORPH_CAPTION_PARSER_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "layoutmorph/lexicon.h"
#include "layoutmorph/semantic_map.h"

namespace layoutmorph {

enum class Pos { kNN, kADJ, kNUM, kDET, kOTHER };

std::string_view PosName(Pos pos);

struct TaggedToken {
  std::string text;
  Pos pos = Pos::kOTHER;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

// Lowercased words; punctuation other than inner hyphens and apostrophes
// separates tokens.
std::vector<std::string> Tokenize(std::string_view caption);

class TokenTagger {
 public:
  virtual ~TokenTagger() = default;
  virtual absl::StatusOr<std::vector<TaggedToken>> Tag(
      std::string_view caption) const = 0;
};

// Closed vocabulary first, then numbers, then suffix rules: "-s" is a
// plural noun, "-y" and "-ful" are adjectives. Everything else is OTHER.
class LexiconTagger : public TokenTagger {
 public:
  static absl::StatusOr<LexiconTagger> FromJson(
      std::string_view json, const Cardinals& cardinals = Cardinals::Default());
  static const LexiconTagger& Default();

  absl::StatusOr<std::vector<TaggedToken>> Tag(
      std::string_view caption) const override;
  Pos TagWord(const std::string& word) const;
  size_t vocabulary_size() const { return lexicon_.size(); }

 private:
  std::map<std::string, Pos, std::less<>> lexicon_;
  const Cardinals* cardinals_ = nullptr;
};

// Digits and cardinal words (hyphenated compounds included) to their value;
// "a" and "an" are one.
std::optional<int> Word2Num(std::string_view word,
                            const Cardinals& cardinals = Cardinals::Default());

struct Nnpm {
  std::optional<std::string> modifier;
  std::vector<std::string> nouns;
  std::string surface;
  // Token index of the first noun and one past the last.
  size_t noun_begin = 0;
  size_t noun_end = 0;
};

struct ObjInfo {
  std::string name;
  int num = 1;
  bool has_num = false;

  friend bool operator==(const ObjInfo&, const ObjInfo&) = default;
};

// The noun phrases of a tagged caption, with the quantity read off the
// token right before each phrase.
std::vector<std::pair<Nnpm, ObjInfo>> ExtractPhrases(
    const std::vector<TaggedToken>& tokens,
    const Cardinals& cardinals = Cardinals::Default());

absl::StatusOr<std::vector<ObjInfo>> PosTagExtract(
    std::string_view caption, const TokenTagger& tagger,
    const Cardinals& cardinals = Cardinals::Default());

class CategoryMapper {
 public:
  virtual ~CategoryMapper() = default;
  // A palette category for `name`, or none. With candidates the result is
  // always one of them.
  virtual std::optional<std::string> Map(
      std::string_view name, const CandidateSet* candidates) const = 0;
};

// Synonym table plus singularization. Leading words are dropped one at a
// time until the remaining phrase resolves, so modifiers never decide the
// category.
class LexiconMapper : public CategoryMapper {
 public:
  LexiconMapper(PalettePtr palette, std::map<std::string, std::string> synonyms,
                Inflector inflector);
  static absl::StatusOr<LexiconMapper> FromJson(
      PalettePtr palette, std::string_view synonyms_json,
      const Inflector& inflector = CaptionGrammar::Default().inflector);
  static const LexiconMapper& Default();

  std::optional<std::string> Map(std::string_view name,
                                 const CandidateSet* candidates) const override;

 private:
  std::optional<std::string> Resolve(const std::string& phrase) const;

  PalettePtr palette_;
  std::map<std::string, std::string> synonyms_;
  Inflector inflector_;
};

enum class CaptionSource { kGroundTruth, kGenerated };

// Ground truth: mapped categories found in `candidates`, with their counts,
// duplicates collapsed. Generated: every phrase, renamed to its category
// when mapping succeeds.
absl::StatusOr<std::vector<ObjInfo>> ObjsExtract(
    std::string_view caption, const CandidateSet* candidates,
    CaptionSource source, const TokenTagger& tagger,
    const CategoryMapper& mapper,
    const Cardinals& cardinals = Cardinals::Default());

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_CAPTION_PARSER_H_
