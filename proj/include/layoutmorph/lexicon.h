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

// Word-level data shared by the caption grammar and the caption parser:
// cardinal number words, plural/singular inflection and the template
// grammar used by synthetic captioners. All of it is loaded from the JSON
// files under data/ (compiled in as defaults).

#ifndef LAYOUTMORPH_LEXICON_H_
#define LAYOUTMORPH_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace layoutmorph {

// Cardinal words one..ninety-nine. "a"/"an" are handled by the parser, not
// here.
class Cardinals {
 public:
  static absl::StatusOr<Cardinals> FromJson(std::string_view json);
  static const Cardinals& Default();

  // Digits, unit/teen/tens words and hyphenated tens-units compounds.
  std::optional<int> Parse(std::string_view word) const;
  // 1..99 to words ("twenty-one"); digits beyond that.
  std::string ToWords(int n) const;

 private:
  std::vector<std::string> units_;  // index 0..19, [0] unused
  std::vector<std::string> tens_;   // index 2..9 meaningful
};

class Inflector {
 public:
  Inflector() = default;
  explicit Inflector(std::map<std::string, std::string> irregular_plurals);

  // Pluralizes the last word of a possibly multi-word noun.
  std::string Plural(std::string_view noun) const;
  // Candidate singular forms of a single word, most specific first; the
  // word itself is always the first candidate.
  std::vector<std::string> SingularCandidates(std::string_view word) const;

 private:
  std::map<std::string, std::string> plural_of_;
  std::map<std::string, std::string> singular_of_;
};

// The fixed template grammar: "<prefix> <phrase> <joiner> <phrase> ...".
struct CaptionGrammar {
  int version = 1;
  std::string prefix = "a picture of";
  std::string empty_scene = "a scene";
  std::string joiner = "and";
  Inflector inflector;
  // Words that take "a" although they start with a vowel, or "an" although
  // they do not.
  std::set<std::string> article_a_exceptions;
  std::set<std::string> article_an_exceptions;

  static absl::StatusOr<CaptionGrammar> FromJson(std::string_view json);
  static const CaptionGrammar& Default();

  std::string Article(std::string_view noun) const;
  // "a dog" / "two dogs".
  std::string Phrase(std::string_view category, int count,
                     const Cardinals& cardinals) const;
  // Renders categories in map order; an empty map yields the empty scene.
  std::string Render(const std::map<std::string, int>& counts,
                     const Cardinals& cardinals) const;
};

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_LEXICON_H_
