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


// Aggregates a report into per-system violation rates and, where the
// captioners logged their own mistakes, detection precision and recall.

#ifndef LAYOUTMORPH_SUMMARIZE_H_
#define LAYOUTMORPH_SUMMARIZE_H_

#include <vector>

#include "json.hpp"

namespace layoutmorph {

// `lines` are report records as read by ReadReport. The result is keyed
// first by variant, then by system id. Rates with an empty denominator are
// null.
nlohmann::json Summarize(const std::vector<nlohmann::json>& lines);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_SUMMARIZE_H_
