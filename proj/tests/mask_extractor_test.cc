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


#include "layoutmorph/mask_extractor.h"

#include <filesystem>
#include <random>

#include "gtest/gtest.h"
#include "layoutmorph/morphology.h"
#include "layoutmorph/synthetic_backends.h"
#include "layoutmorph/synthetic_scene.h"
#include "test_util.h"

namespace layoutmorph {
namespace {

using ::layoutmorph::testing::MapFromRows;
using ::layoutmorph::testing::MaskFromRows;

SceneRecord SceneFromMap(const SemanticMap& map) {
  SceneRecord scene;
  scene.seed_id = "s";
  scene.semantic_map = map;
  scene.image = RenderFlat(map);
  scene.instances = SplitInstances(map);
  scene.candidates = CandidatesFromInstances(scene.instances);
  return scene;
}

std::set<std::string> AllIds(const SceneRecord& scene) {
  std::set<std::string> ids;
  for (const auto& o : scene.instances) ids.insert(o.instance_id());
  return ids;
}

ExtractionConfig Iterations(int n) {
  ExtractionConfig c;
  c.dilation_iterations = n;
  return c;
}

// Blanks the whole image, so nothing survives re-segmentation.
class EraseAllInpainter : public Inpainter {
 public:
  absl::StatusOr<RgbImage> Inpaint(const RgbImage& image,
                                   const BinaryMask&) override {
    ++calls;
    return RgbImage(image.width(), image.height());
  }
  int calls = 0;
};

class FailingInpainter : public Inpainter {
 public:
  absl::StatusOr<RgbImage> Inpaint(const RgbImage&,
                                   const BinaryMask&) override {
    return MakeError(ErrorKind::kBackendError, "down");
  }
};

class MaskExtractorTest : public ::testing::Test {
 protected:
  ExactSegmenter segmenter_{DefaultPalette()};
  BackgroundFillInpainter inpainter_{DefaultPalette()};
};

TEST(ExtractionConfigTest, Validates) {
  EXPECT_TRUE(ExtractionConfig{}.Validate().ok());
  ExtractionConfig c;
  c.dilation_kernel = 4;
  LM_EXPECT_KIND(c.Validate(), ErrorKind::kPrecondition);
  c.dilation_kernel = 1;
  c.max_resegment_retries = -1;
  LM_EXPECT_KIND(c.Validate(), ErrorKind::kPrecondition);
}

TEST(BuildInpaintMaskTest, HandTraceFourByFour) {
  const SceneRecord s = SceneFromMap(MapFromRows({"1100",  //
                                                  "1100",  //
                                                  "0002",  //
                                                  "0022"}));
  ASSERT_EQ(s.instances.size(), 2u);
  const std::set<std::string> targets = {"obj0", "obj1"};
  auto a = BuildInpaintMask(s.semantic_map, s.instances, targets,
                            std::string("obj0"), false);
  LM_ASSERT_OK(a);
  EXPECT_EQ(*a, MaskFromRows({"....",  //
                              "....",  //
                              "...#",  //
                              "..##"}));
  auto bg = BuildInpaintMask(s.semantic_map, s.instances, targets,
                             std::nullopt, true);
  LM_ASSERT_OK(bg);
  EXPECT_EQ(*bg, MaskFromRows({"##..",  //
                               "##..",  //
                               "...#",  //
                               "..##"}));
}

TEST(BuildInpaintMaskTest, SingleInstanceIsAllBlack) {
  const SceneRecord s = SceneFromMap(MapFromRows({"000", "030", "000"}));
  auto m = BuildInpaintMask(s.semantic_map, s.instances, {"obj0"},
                            std::string("obj0"), false);
  LM_ASSERT_OK(m);
  EXPECT_TRUE(m->Empty());
}

TEST(BuildInpaintMaskTest, NonTargetsAreLeftAlone) {
  const SceneRecord s = SceneFromMap(MapFromRows({"10", "02"}));
  auto m = BuildInpaintMask(s.semantic_map, s.instances, {"obj0"}, std::nullopt,
                            true);
  LM_ASSERT_OK(m);
  EXPECT_EQ(*m, MaskFromRows({"#.", ".."}));
}

TEST(BuildInpaintMaskTest, Errors) {
  const SceneRecord s = SceneFromMap(MapFromRows({"10", "02"}));
  LM_EXPECT_KIND(BuildInpaintMask(s.semantic_map, s.instances, {}, std::nullopt,
                                  true),
                 ErrorKind::kPrecondition);
  LM_EXPECT_KIND(BuildInpaintMask(s.semantic_map, s.instances, {"obj0"},
                                  std::string("obj1"), false),
                 ErrorKind::kUnknownTarget);
  LM_EXPECT_KIND(BuildInpaintMask(s.semantic_map, s.instances, {"obj0"},
                                  std::nullopt, false),
                 ErrorKind::kUnknownTarget);
  LM_EXPECT_KIND(BuildInpaintMask(s.semantic_map, s.instances, {"nope"},
                                  std::nullopt, true),
                 ErrorKind::kUnknownTarget);
}

TEST(BuildInpaintMaskTest, BackgroundPassIsUnionWithCur) {
  SyntheticSceneOptions options;
  options.occlusion = true;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const SyntheticScene scene =
        GenerateScene(options, DefaultPalette(), seed, "s");
    const SceneRecord& r = scene.record;
    const std::set<std::string> targets = AllIds(r);
    auto bg = BuildInpaintMask(r.semantic_map, r.instances, targets,
                               std::nullopt, true);
    LM_ASSERT_OK(bg);
    for (const ObjectInstance& x : r.instances) {
      auto white = BuildInpaintMask(r.semantic_map, r.instances, targets,
                                    x.instance_id(), false);
      LM_ASSERT_OK(white);
      EXPECT_EQ(*bg, white->Or(x.mask())) << "seed " << seed;
    }
  }
}

TEST(DilateBackfillTest, OnePixelGrowsToBlock) {
  BinaryMask one(5, 5);
  one.Set(2, 2);
  auto grown = DilateBackfill(one, nullptr, Iterations(1));
  LM_ASSERT_OK(grown);
  EXPECT_EQ(*grown, MaskFromRows({".....",  //
                                  ".###.",  //
                                  ".###.",  //
                                  ".###.",  //
                                  "....."}));
  BinaryMask corner(4, 4);
  corner.Set(0, 0);
  EXPECT_EQ(*DilateBackfill(corner, nullptr, Iterations(1)),
            MaskFromRows({"##..", "##..", "....", "...."}));
}

TEST(DilateBackfillTest, RingAroundProtectedObject) {
  const BinaryMask ring = MaskFromRows({"......",  //
                                        ".####.",  //
                                        ".#..#.",  //
                                        ".#..#.",  //
                                        ".####.",  //
                                        "......"});
  const BinaryMask cur = MaskFromRows({"......",  //
                                       "......",  //
                                       "..##..",  //
                                       "..##..",  //
                                       "......",  //
                                       "......"});
  auto grown = DilateBackfill(ring, &cur, Iterations(1));
  LM_ASSERT_OK(grown);
  EXPECT_EQ(*grown, MaskFromRows({"######",  //
                                  "######",  //
                                  "##..##",  //
                                  "##..##",  //
                                  "######",  //
                                  "######"}));
}

TEST(DilateBackfillTest, ZeroIterationsOnlyRemovesProtect) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMask region = ::layoutmorph::testing::RandomMask(rng, 9, 7, 0.4);
    const BinaryMask protect =
        ::layoutmorph::testing::RandomMask(rng, 9, 7, 0.3);
    EXPECT_EQ(*DilateBackfill(region, &protect, Iterations(0)),
              region.Minus(protect));
    EXPECT_EQ(*DilateBackfill(region, nullptr, Iterations(0)), region);
  }
}

TEST(DilateBackfillTest, ShapeMismatch) {
  const BinaryMask protect(3, 3);
  LM_EXPECT_KIND(DilateBackfill(BinaryMask(4, 4), &protect, ExtractionConfig{}),
                 ErrorKind::kShapeError);
}

TEST_F(MaskExtractorTest, OcclusionFixtureSixBySix) {
  // Person (label 1) partly hidden behind a cat (label 3).
  const SceneRecord s = SceneFromMap(MapFromRows({"111100",  //
                                                  "111100",  //
                                                  "111333",  //
                                                  "111333",  //
                                                  "000333",  //
                                                  "000000"}));
  ASSERT_EQ(s.instances.size(), 2u);
  const std::set<std::string> targets = AllIds(s);
  auto person = ExtractSingle(s.image, s.semantic_map, s.instances, targets,
                              "obj0", inpainter_, segmenter_,
                              ExtractionConfig{});
  LM_ASSERT_OK(person);
  EXPECT_TRUE(s.instances[0].mask().SubsetOf(*person));
  // The excised cat region (dilated twice, person pixels protected) borders
  // mostly person pixels, so the fill completes the person into it. Only the
  // untouched background in column 0 stays out.
  EXPECT_EQ(*person, MaskFromRows({"######",  //
                                   "######",  //
                                   "######",  //
                                   "######",  //
                                   ".#####",  //
                                   ".#####"}));
  auto cat = ExtractSingle(s.image, s.semantic_map, s.instances, targets,
                           "obj1", inpainter_, segmenter_, ExtractionConfig{});
  LM_ASSERT_OK(cat);
  EXPECT_TRUE(s.instances[1].mask().SubsetOf(*cat));
  // The dilated person region reaches every pixel but (5,5), and its only
  // border is the cat.
  EXPECT_EQ(*cat, MaskFromRows({"######",  //
                                "######",  //
                                "######",  //
                                "######",  //
                                "######",  //
                                "#####."}));
}

TEST_F(MaskExtractorTest, DisjointScenesRecoverExactMasks) {
  int scenes = 0;
  for (uint64_t seed = 0; scenes < 100; ++seed) {
    const SyntheticScene scene =
        GenerateScene(SyntheticSceneOptions{}, DefaultPalette(), seed, "s");
    ASSERT_FALSE(scene.has_overlap);
    const SceneRecord& r = scene.record;
    auto result =
        MapSplit(r, AllIds(r), inpainter_, segmenter_, ExtractionConfig{});
    LM_ASSERT_OK(result);
    ASSERT_EQ(result->singles.size(), r.instances.size());
    for (size_t i = 0; i < r.instances.size(); ++i) {
      EXPECT_EQ(result->singles.at(r.instances[i].instance_id()),
                scene.full_masks[i])
          << "seed " << seed;
    }
    ++scenes;
  }
}

TEST_F(MaskExtractorTest, OccludedScenesKeepVisiblePixels) {
  SyntheticSceneOptions options;
  options.occlusion = true;
  int overlapping = 0;
  for (uint64_t seed = 0; overlapping < 100; ++seed) {
    ASSERT_LT(seed, 2000u);
    const SyntheticScene scene =
        GenerateScene(options, DefaultPalette(), seed, "s");
    if (!scene.has_overlap) continue;
    ++overlapping;
    const SceneRecord& r = scene.record;
    auto result =
        MapSplit(r, AllIds(r), inpainter_, segmenter_, ExtractionConfig{});
    LM_ASSERT_OK(result);
    for (const ObjectInstance& obj : r.instances) {
      EXPECT_TRUE(obj.mask().SubsetOf(result->singles.at(obj.instance_id())))
          << "seed " << seed << " " << obj.instance_id();
    }
  }
}

TEST_F(MaskExtractorTest, BackgroundHasNoTargetLabelsNearTargets) {
  SyntheticSceneOptions options;
  options.occlusion = true;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const SyntheticScene scene =
        GenerateScene(options, DefaultPalette(), seed, "s");
    const SceneRecord& r = scene.record;
    const ExtractionConfig config;
    auto result = MapSplit(r, AllIds(r), inpainter_, segmenter_, config);
    LM_ASSERT_OK(result);
    for (const ObjectInstance& obj : r.instances) {
      const Label label = *DefaultPalette()->LabelOf(obj.category());
      const int pad = config.dilation_kernel / 2;
      const BoundingBox& b = obj.bbox();
      for (int y = std::max(0, b.y_min - pad);
           y <= std::min(r.semantic_map.height() - 1, b.y_max + pad); ++y) {
        for (int x = std::max(0, b.x_min - pad);
             x <= std::min(r.semantic_map.width() - 1, b.x_max + pad); ++x) {
          for (const ObjectInstance& other : r.instances) {
            ASSERT_NE(result->background_map.at(x, y),
                      *DefaultPalette()->LabelOf(other.category()))
                << "seed " << seed << " at " << x << "," << y;
          }
        }
      }
      EXPECT_TRUE(result->background_map.MaskOf(label).And(obj.mask()).Empty());
    }
  }
}

TEST_F(MaskExtractorTest, MapSplitShapes) {
  const SceneRecord one = SceneFromMap(MapFromRows({"0000", "0220", "0000"}));
  auto r1 = MapSplit(one, {"obj0"}, inpainter_, segmenter_, ExtractionConfig{});
  LM_ASSERT_OK(r1);
  EXPECT_EQ(r1->singles.size(), 1u);
  EXPECT_EQ(r1->background_map,
            SemanticMap::Blank(4, 3, DefaultPalette()));
  EXPECT_EQ(r1->background_image, RgbImage(4, 3));

  const SceneRecord two =
      SceneFromMap(MapFromRows({"11000000", "11000022", "00000022"}));
  auto r2 = MapSplit(two, AllIds(two), inpainter_, segmenter_,
                     ExtractionConfig{});
  LM_ASSERT_OK(r2);
  EXPECT_EQ(r2->singles.size(), 2u);
  EXPECT_TRUE(r2->background_map.MaskOf(1).Empty());
  EXPECT_TRUE(r2->background_map.MaskOf(2).Empty());

  LM_EXPECT_KIND(
      MapSplit(two, {}, inpainter_, segmenter_, ExtractionConfig{}),
      ErrorKind::kPrecondition);
}

TEST_F(MaskExtractorTest, NonTargetsStayInBackground) {
  const SceneRecord s =
      SceneFromMap(MapFromRows({"11000000", "11000022", "00000022"}));
  auto r = MapSplit(s, {"obj1"}, inpainter_, segmenter_, ExtractionConfig{});
  LM_ASSERT_OK(r);
  EXPECT_EQ(r->background_map.MaskOf(1), s.semantic_map.MaskOf(1));
  EXPECT_TRUE(r->background_map.MaskOf(2).Empty());
}

TEST_F(MaskExtractorTest, VanishedCategoryFailsAfterRetries) {
  const SceneRecord s = SceneFromMap(MapFromRows({"1100", "0002"}));
  EraseAllInpainter eraser;
  ExtractionConfig config;
  config.max_resegment_retries = 2;
  LM_EXPECT_KIND(ExtractSingle(s.image, s.semantic_map, s.instances,
                               AllIds(s), "obj0", eraser, segmenter_, config),
                 ErrorKind::kExtractionFailed);
  EXPECT_EQ(eraser.calls, 3);
}

TEST_F(MaskExtractorTest, BackendErrorAborts) {
  const SceneRecord s = SceneFromMap(MapFromRows({"1100", "0002"}));
  FailingInpainter failing;
  LM_EXPECT_KIND(
      MapSplit(s, AllIds(s), failing, segmenter_, ExtractionConfig{}),
      ErrorKind::kBackendError);
}

TEST_F(MaskExtractorTest, SinglesAsInstancesKeepsMetadata) {
  const SceneRecord s =
      SceneFromMap(MapFromRows({"11000000", "11000022", "00000022"}));
  auto r = MapSplit(s, AllIds(s), inpainter_, segmenter_, ExtractionConfig{});
  LM_ASSERT_OK(r);
  auto singles = SinglesAsInstances(s, *r);
  LM_ASSERT_OK(singles);
  ASSERT_EQ(singles->size(), 2u);
  for (size_t i = 0; i < 2; ++i) {
    EXPECT_EQ((*singles)[i].instance_id(), s.instances[i].instance_id());
    EXPECT_EQ((*singles)[i].category(), s.instances[i].category());
    EXPECT_EQ((*singles)[i].z_order(), s.instances[i].z_order());
  }
}

TEST_F(MaskExtractorTest, DebugDumpWritesMasks) {
  const auto dir = std::filesystem::temp_directory_path() / "lm_dump_test";
  std::filesystem::remove_all(dir);
  ExtractionConfig config;
  config.debug_dump_dir = dir.string();
  const SceneRecord s = SceneFromMap(MapFromRows({"1100", "0002"}));
  LM_ASSERT_OK(MapSplit(s, AllIds(s), inpainter_, segmenter_, config));
  EXPECT_TRUE(std::filesystem::exists(dir / "obj0_single.pgm"));
  EXPECT_TRUE(std::filesystem::exists(dir / "background_region.pgm"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace layoutmorph
