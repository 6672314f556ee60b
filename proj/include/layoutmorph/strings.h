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

#ifndef LAYOUTMORPH_STRINGS_H_
#define LAYOUTMORPH_STRINGS_H_

#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

namespace layoutmorph {

template <typename... Args>
std::string StrCat(const Args&... args) {
  std::string out;
  (fmt::format_to(std::back_inserter(out), "{}", args), ...);
  return out;
}

std::vector<std::string> SplitString(std::string_view text, char sep);
std::string JoinStrings(const std::vector<std::string>& parts,
                        std::string_view sep);
std::string ToLower(std::string_view text);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_STRINGS_H_
