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

#ifndef LAYOUTMORPH_MORPHOLOGY_H_
#define LAYOUTMORPH_MORPHOLOGY_H_

#include <vector>

#include "layoutmorph/raster.h"

namespace layoutmorph {

enum class Connectivity { kFour = 4, kEight = 8 };

// Square-kernel dilation, clipped at the canvas. `kernel` is the odd side
// length; iterations == 0 returns the input.
BinaryMask Dilate(const BinaryMask& mask, int kernel, int iterations);

// Components ordered by their first pixel in row-major scan order.
std::vector<BinaryMask> ConnectedComponents(const BinaryMask& mask,
                                            Connectivity connectivity);

}  // namespace layoutmorph

#endif  // LAYOUTMORPH_MORPHOLOGY_H_
