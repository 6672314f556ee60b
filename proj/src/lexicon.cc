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

#include "layoutmorph/lexicon.h"

#include <cctype>
#include <charconv>

#include "layoutmorph/strings.h"
#include "json.hpp"
#include "layoutmorph/embedded_data.h"
#include "layoutmorph/status.h"

namespace layoutmorph {
namespace {

using json = nlohmann::json;

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

absl::StatusOr<json> ParseObject(std::string_view text, std::string_view what) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::InvalidArgumentError(
        StrCat(what, ": expected a JSON object"));
  }
  return doc;
}

}  // namespace

absl::StatusOr<Cardinals> Cardinals::FromJson(std::string_view text) {
  LM_ASSIGN_OR_RETURN(json doc, ParseObject(text, "cardinals"));
  Cardinals c;
  try {
    c.units_ = doc.at("units").get<std::vector<std::string>>();
    c.tens_ = doc.at("tens").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(StrCat("cardinals: ", e.what()));
  }
  if (c.units_.size() != 20 || c.tens_.size() != 10) {
    return absl::InvalidArgumentError(
        "cardinals: need 20 unit words and 10 tens slots");
  }
  return c;
}

const Cardinals& Cardinals::Default() {
  static const Cardinals* cardinals =
      new Cardinals(*Cardinals::FromJson(embedded::kCardinalsJson));
  return *cardinals;
}

std::optional<int> Cardinals::Parse(std::string_view word) const {
  const std::string w = ToLower(word);
  if (w.empty()) return std::nullopt;
  bool digits = true;
  for (char ch : w) digits &= std::isdigit(static_cast<unsigned char>(ch)) != 0;
  if (digits) {
    int value = 0;
    if (w.size() > 9 || std::from_chars(w.data(), w.data() + w.size(), value).ec != std::errc() || value < 1) {
      return std::nullopt;
    }
    return value;
  }
  for (int i = 1; i < 20; ++i) {
    if (w == units_[i]) return i;
  }
  std::vector<std::string> parts = SplitString(w, '-');
  if (parts.size() > 2) return std::nullopt;
  for (int t = 2; t < 10; ++t) {
    if (parts[0] != tens_[t]) continue;
    if (parts.size() == 1) return t * 10;
    for (int u = 1; u < 10; ++u) {
      if (parts[1] == units_[u]) return t * 10 + u;
    }
  }
  return std::nullopt;
}

std::string Cardinals::ToWords(int n) const {
  if (n >= 1 && n < 20) return units_[n];
  if (n >= 20 && n < 100) {
    return n % 10 == 0 ? tens_[n / 10]
                       : StrCat(tens_[n / 10], "-", units_[n % 10]);
  }
  return StrCat(n);
}

Inflector::Inflector(std::map<std::string, std::string> irregular_plurals)
    : plural_of_(std::move(irregular_plurals)) {
  for (const auto& [singular, plural] : plural_of_) {
    singular_of_[plural] = singular;
  }
}

std::string Inflector::Plural(std::string_view noun) const {
  const size_t space = noun.rfind(' ');
  const std::string_view head =
      space == std::string_view::npos ? noun : noun.substr(space + 1);
  const std::string_view stem =
      space == std::string_view::npos ? "" : noun.substr(0, space + 1);
  if (auto it = plural_of_.find(std::string(head)); it != plural_of_.end()) {
    return StrCat(stem, it->second);
  }
  std::string w(head);
  if (w.ends_with("s") || w.ends_with("x") ||
      w.ends_with("z") || w.ends_with("ch") ||
      w.ends_with("sh")) {
    return StrCat(stem, w, "es");
  }
  if (w.size() > 1 && w.back() == 'y' && !IsVowel(w[w.size() - 2])) {
    return StrCat(stem, w.substr(0, w.size() - 1), "ies");
  }
  return StrCat(stem, w, "s");
}

std::vector<std::string> Inflector::SingularCandidates(
    std::string_view word) const {
  std::vector<std::string> out{std::string(word)};
  if (auto it = singular_of_.find(std::string(word));
      it != singular_of_.end()) {
    out.push_back(it->second);
  }
  const std::string w(word);
  if (w.size() > 3 && w.ends_with("ies")) {
    out.push_back(w.substr(0, w.size() - 3) + "y");
  }
  if (w.size() > 2 && w.ends_with("s") && !w.ends_with("ss")) {
    out.push_back(w.substr(0, w.size() - 1));
  }
  if (w.size() > 3 && w.ends_with("es")) {
    out.push_back(w.substr(0, w.size() - 2));
  }
  return out;
}

absl::StatusOr<CaptionGrammar> CaptionGrammar::FromJson(std::string_view text) {
  LM_ASSIGN_OR_RETURN(json doc, ParseObject(text, "grammar"));
  CaptionGrammar g;
  try {
    g.version = doc.value("version", 1);
    g.prefix = doc.value("prefix", g.prefix);
    g.empty_scene = doc.value("empty_scene", g.empty_scene);
    g.joiner = doc.value("joiner", g.joiner);
    g.inflector = Inflector(doc.value(
        "irregular_plurals", std::map<std::string, std::string>{}));
    g.article_a_exceptions =
        doc.value("article_a_exceptions", std::set<std::string>{});
    g.article_an_exceptions =
        doc.value("article_an_exceptions", std::set<std::string>{});
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(StrCat("grammar: ", e.what()));
  }
  return g;
}

const CaptionGrammar& CaptionGrammar::Default() {
  static const CaptionGrammar* grammar =
      new CaptionGrammar(*CaptionGrammar::FromJson(embedded::kGrammarJson));
  return *grammar;
}

std::string CaptionGrammar::Article(std::string_view noun) const {
  const std::string first(noun.substr(0, noun.find(' ')));
  if (article_a_exceptions.count(first)) return "a";
  if (article_an_exceptions.count(first)) return "an";
  return !first.empty() && IsVowel(first[0]) ? "an" : "a";
}

std::string CaptionGrammar::Phrase(std::string_view category, int count,
                                   const Cardinals& cardinals) const {
  if (count == 1) return StrCat(Article(category), " ", category);
  return StrCat(cardinals.ToWords(count), " ",
                      inflector.Plural(category));
}

std::string CaptionGrammar::Render(const std::map<std::string, int>& counts,
                                   const Cardinals& cardinals) const {
  if (counts.empty()) return StrCat(prefix, " ", empty_scene);
  std::vector<std::string> phrases;
  for (const auto& [category, count] : counts) {
    phrases.push_back(Phrase(category, count, cardinals));
  }
  return StrCat(prefix, " ",
                      JoinStrings(phrases, StrCat(" ", joiner, " ")));
}

}  // namespace layoutmorph
