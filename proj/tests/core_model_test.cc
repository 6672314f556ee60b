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


#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "layoutmorph/codec.h"
#include "layoutmorph/raster.h"
#include "layoutmorph/scene.h"
#include "layoutmorph/semantic_map.h"
#include "test_util.h"

namespace layoutmorph {
namespace {

using ::layoutmorph::testing::MapFromRows;
using ::layoutmorph::testing::MaskFromRows;
using ::layoutmorph::testing::RandomMap;
using ::layoutmorph::testing::RandomMask;

// Independent oracle: project onto rows and columns, take first/last hits.
std::optional<BoundingBox> ProjectionBox(const BinaryMask& m) {
  std::vector<bool> rows(m.height()), cols(m.width());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (m.Get(x, y)) rows[y] = cols[x] = true;
    }
  }
  auto first = [](const std::vector<bool>& v) {
    return static_cast<int>(std::find(v.begin(), v.end(), true) - v.begin());
  };
  auto last = [](const std::vector<bool>& v) {
    return static_cast<int>(v.rend() - std::find(v.rbegin(), v.rend(), true)) -
           1;
  };
  if (first(rows) == m.height()) return std::nullopt;
  return BoundingBox{first(cols), last(cols), first(rows), last(rows)};
}

// Independent oracle: union-find over 4-neighbour same-label pixels.
std::map<Label, int> UnionFindCounts(const SemanticMap& map) {
  const int w = map.width();
  const int n = w * map.height();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w && map.at(x, y) == map.at(x + 1, y)) {
        parent[find(y * w + x)] = find(y * w + x + 1);
      }
      if (y + 1 < map.height() && map.at(x, y) == map.at(x, y + 1)) {
        parent[find(y * w + x)] = find((y + 1) * w + x);
      }
    }
  }
  std::map<Label, int> counts;
  for (int i = 0; i < n; ++i) {
    const Label l = map.labels()[i];
    if (l != kBackgroundLabel && find(i) == i) ++counts[l];
  }
  return counts;
}

TEST(TightBboxTest, TwoPixels) {
  BinaryMask m(4, 4);
  m.Set(1, 1);
  m.Set(2, 2);
  auto box = TightBbox(m);
  LM_ASSERT_OK(box);
  EXPECT_EQ(*box, (BoundingBox{1, 2, 1, 2}));
}

TEST(TightBboxTest, FullCanvas) {
  EXPECT_EQ(*TightBbox(BinaryMask(3, 3, true)), (BoundingBox{0, 2, 0, 2}));
}

TEST(TightBboxTest, EmptyMaskIsAnError) {
  LM_EXPECT_KIND(TightBbox(BinaryMask(5, 5)), ErrorKind::kEmptyMask);
}

TEST(TightBboxTest, MatchesProjectionOracleOnRandomMasks) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 24);
  std::uniform_real_distribution<double> density(0.0, 0.2);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    BinaryMask m = RandomMask(rng, dim(rng), dim(rng), density(rng));
    auto expected = ProjectionBox(m);
    auto box = TightBbox(m);
    ASSERT_EQ(box.ok(), expected.has_value());
    if (expected) {
      ASSERT_EQ(*box, *expected);
      ++checked;
    }
  }
  EXPECT_GT(checked, 9000);
}

TEST(ObjectInstanceTest, BoxIsTightBoxOfMask) {
  BinaryMask m = MaskFromRows({"....", ".##.", "..#.", "...."});
  auto obj = ObjectInstance::Create("a", "dog", m, 3);
  LM_ASSERT_OK(obj);
  EXPECT_EQ(obj->bbox(), *TightBbox(m));
  EXPECT_EQ(obj->z_order(), 3);
  LM_EXPECT_KIND(ObjectInstance::Create("b", "dog", BinaryMask(2, 2), 0),
                 ErrorKind::kEmptyMask);
}

TEST(SplitInstancesTest, TwoDisjointBlobsOfOneLabel) {
  SemanticMap map = MapFromRows({"55000", "55000", "00055", "00055"});
  auto objs = SplitInstances(map);
  ASSERT_EQ(objs.size(), 2u);
  EXPECT_EQ(objs[0].category(), "sheep");
  EXPECT_EQ(objs[1].category(), "sheep");
  EXPECT_EQ(objs[0].instance_id(), "obj0");
  EXPECT_EQ(objs[0].z_order(), 0);
  EXPECT_EQ(objs[1].z_order(), 1);
  EXPECT_EQ(objs[1].bbox(), (BoundingBox{3, 4, 2, 3}));
}

TEST(SplitInstancesTest, LShapeIsOneInstance) {
  SemanticMap map = MapFromRows({"2000", "2000", "2220"});
  auto objs = SplitInstances(map);
  ASSERT_EQ(objs.size(), 1u);
  EXPECT_EQ(objs[0].mask().Count(), 5u);
}

TEST(SplitInstancesTest, DiagonalNeighboursAreSeparate) {
  SemanticMap map = MapFromRows({"10", "01"});
  EXPECT_EQ(SplitInstances(map).size(), 2u);
  EXPECT_TRUE(SplitInstances(MapFromRows({"00", "00"})).empty());
}

TEST(SplitInstancesTest, CountsMatchUnionFindOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 30);
  for (int trial = 0; trial < 100; ++trial) {
    SemanticMap map = RandomMap(rng, dim(rng), dim(rng), trial % 5 + 1);
    std::map<Label, int> expected = UnionFindCounts(map);
    std::map<Label, int> got;
    for (const auto& o : SplitInstances(map)) {
      ++got[*map.palette().LabelOf(o.category())];
    }
    ASSERT_EQ(got, expected) << "trial " << trial;
    CandidateSet counts = CountComponents(map);
    for (const auto& [label, n] : expected) {
      EXPECT_EQ(counts[std::string(map.palette().NameOf(label))], n);
    }
  }
}

TEST(SplitInstancesTest, Deterministic) {
  std::mt19937_64 rng(3);
  SemanticMap map = RandomMap(rng, 20, 20, 3);
  EXPECT_EQ(SplitInstances(map), SplitInstances(map));
}

TEST(SplitInstancesTest, MasksPartitionTheForeground) {
  std::mt19937_64 rng(5);
  SemanticMap map = RandomMap(rng, 16, 12, 4);
  BinaryMask all(16, 12);
  size_t total = 0;
  for (const auto& o : SplitInstances(map)) {
    total += o.mask().Count();
    all = all.Or(o.mask());
  }
  EXPECT_EQ(total, all.Count());
  EXPECT_EQ(all, BinaryMask(16, 12, true).Minus(map.MaskOf(0)));
}

TEST(PaletteTest, ColorLabelColorRoundTrip) {
  const PalettePtr palette = DefaultPalette();
  ASSERT_GE(palette->entries().size(), 30u);
  for (const PaletteEntry& e : palette->entries()) {
    auto label = palette->LabelOfColor(e.color);
    ASSERT_TRUE(label.has_value());
    EXPECT_EQ(*label, e.index);
    EXPECT_EQ(palette->ColorOf(*label), e.color);
    EXPECT_EQ(palette->NameOf(*label), e.name);
  }
  EXPECT_EQ(palette->LabelOfColor({0, 0, 0}), kBackgroundLabel);
  EXPECT_FALSE(palette->LabelOfColor({1, 2, 3}).has_value());
}

TEST(PaletteTest, RejectsInvalidEntries) {
  LM_EXPECT_KIND(CategoryPalette::Create({{"dog", 0, {1, 1, 1}}}),
                 ErrorKind::kPaletteMismatch);
  LM_EXPECT_KIND(
      CategoryPalette::Create({{"dog", 1, {1, 1, 1}}, {"cat", 2, {1, 1, 1}}}),
      ErrorKind::kPaletteMismatch);
  LM_EXPECT_KIND(
      CategoryPalette::Create({{"dog", 1, {1, 1, 1}}, {"dog", 2, {2, 2, 2}}}),
      ErrorKind::kPaletteMismatch);
  LM_EXPECT_KIND(CategoryPalette::Create({{"Dog", 1, {1, 1, 1}}}),
                 ErrorKind::kPaletteMismatch);
  LM_EXPECT_KIND(CategoryPalette::Create({{"dog", 1, {0, 0, 0}}}),
                 ErrorKind::kPaletteMismatch);
}

TEST(SemanticMapTest, CreateValidates) {
  LM_EXPECT_KIND(SemanticMap::Create(0, 1, {}, DefaultPalette()),
                 ErrorKind::kShapeError);
  LM_EXPECT_KIND(SemanticMap::Create(2, 2, {0, 0, 0}, DefaultPalette()),
                 ErrorKind::kShapeError);
  LM_EXPECT_KIND(SemanticMap::Create(1, 1, {200}, DefaultPalette()),
                 ErrorKind::kPaletteMismatch);
}

TEST(ComposeTest, LaterZOrderWins) {
  SemanticMap bg = SemanticMap::Blank(3, 1, DefaultPalette());
  auto a = *ObjectInstance::Create("a", "dog", MaskFromRows({"##."}), 1);
  auto b = *ObjectInstance::Create("b", "cat", MaskFromRows({".##"}), 0);
  SemanticMap out = Compose(bg, {a, b});
  const Label dog = *DefaultPalette()->LabelOf("dog");
  const Label cat = *DefaultPalette()->LabelOf("cat");
  EXPECT_EQ(out.at(0, 0), dog);
  EXPECT_EQ(out.at(1, 0), dog);
  EXPECT_EQ(out.at(2, 0), cat);
}

TEST(CodecTest, MapPgmRoundTrip) {
  std::mt19937_64 rng(1);
  SemanticMap map = RandomMap(rng, 13, 7, 32);
  auto back = DecodeMapPgm(EncodeMapPgm(map), DefaultPalette());
  LM_ASSERT_OK(back);
  EXPECT_EQ(*back, map);
  EXPECT_EQ(EncodeMapPgm(map).substr(0, 2), "P5");
}

TEST(CodecTest, MaskPgmUses0And255) {
  BinaryMask m = MaskFromRows({"#.", ".#"});
  const std::string bytes = EncodeMaskPgm(m);
  EXPECT_EQ(static_cast<unsigned char>(bytes[bytes.size() - 4]), 255);
  EXPECT_EQ(static_cast<unsigned char>(bytes[bytes.size() - 3]), 0);
  EXPECT_EQ(*DecodeMaskPgm(bytes), m);
}

TEST(CodecTest, PgmCommentsAreSkipped) {
  constexpr char kBytes[] = "P5\n# note\n2 1\n255\n\x01\x02";
  auto img = DecodePgm(std::string(kBytes, sizeof(kBytes) - 1));
  LM_ASSERT_OK(img);
  EXPECT_EQ(img->values, (std::vector<uint8_t>{1, 2}));
  EXPECT_FALSE(DecodePgm("P6\n1 1\n255\nabc").ok());
  EXPECT_FALSE(DecodePgm("P5\n2 2\n255\n\x01").ok());
}

TEST(CodecTest, PngRoundTrip) {
  RgbImage img(5, 3);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 5; ++x) {
      img.at(x, y) = {static_cast<uint8_t>(x * 40), static_cast<uint8_t>(y),
                      7};
    }
  }
  auto back = DecodePng(EncodePng(img));
  LM_ASSERT_OK(back);
  EXPECT_EQ(*back, img);
  EXPECT_FALSE(DecodePng("not a png").ok());
}

TEST(CodecTest, PaletteJsonRoundTrip) {
  auto back = ParsePaletteJson(PaletteToJson(*DefaultPalette()));
  LM_ASSERT_OK(back);
  EXPECT_EQ(*back, *DefaultPalette());
}

TEST(CodecTest, Sha256) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace layoutmorph
