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


#include <random>

#include "gtest/gtest.h"
#include "layoutmorph/backends.h"
#include "layoutmorph/scene.h"
#include "layoutmorph/synthetic_backends.h"
#include "layoutmorph/synthetic_scene.h"
#include "layoutmorph/wire.h"
#include "test_util.h"

namespace layoutmorph {
namespace {

using ::layoutmorph::testing::MapFromRows;
using ::layoutmorph::testing::MaskFromRows;
using ::layoutmorph::testing::RandomMap;

const Label kPerson = 1;
const Rgb kBlack{0, 0, 0};

TEST(ExactSegmenterTest, InvertsFlatRendererOnRandomMaps) {
  std::mt19937_64 rng(21);
  ExactSegmenter segmenter(DefaultPalette());
  for (int trial = 0; trial < 50; ++trial) {
    SemanticMap map = RandomMap(rng, 1 + trial % 17, 1 + trial % 11, 32);
    auto back = segmenter.ToMap(RenderFlat(map));
    LM_ASSERT_OK(back);
    ASSERT_EQ(*back, map);
  }
}

TEST(ExactSegmenterTest, SolidColorIsOneInstance) {
  ExactSegmenter segmenter(DefaultPalette());
  RgbImage image(6, 4, DefaultPalette()->ColorOf(3));
  auto seg = segmenter.Segment(image);
  LM_ASSERT_OK(seg);
  ASSERT_EQ(seg->instances.size(), 1u);
  EXPECT_EQ(seg->candidates, (CandidateSet{{"cat", 1}}));
  EXPECT_EQ(seg->instances[0].mask().Count(), 24u);
}

TEST(ExactSegmenterTest, UnknownColorIsPaletteMismatch) {
  ExactSegmenter segmenter(DefaultPalette());
  LM_EXPECT_KIND(segmenter.Segment(RgbImage(2, 2, {1, 2, 3})),
                 ErrorKind::kPaletteMismatch);
  LM_EXPECT_KIND(segmenter.Segment(RgbImage()), ErrorKind::kShapeError);
}

TEST(ExactSegmenterTest, CandidatesMatchGeneratorGroundTruth) {
  ExactSegmenter segmenter(DefaultPalette());
  SyntheticSceneOptions options;
  options.min_objects = options.max_objects = 3;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    SyntheticScene scene =
        GenerateScene(options, DefaultPalette(), seed, "s");
    auto seg = segmenter.Segment(scene.record.image);
    LM_ASSERT_OK(seg);
    ASSERT_EQ(seg->candidates, scene.record.candidates) << "seed " << seed;
  }
}

TEST(FlatRendererTest, ReturnsSamplesPerMapIdenticalImages) {
  FlatRenderer renderer;
  SemanticMap map = MapFromRows({"0120", "0000"});
  TranslationParams params;
  EXPECT_EQ(params.guidance_strength, 1.3);
  EXPECT_EQ(params.diffusion_steps, 250);
  auto images = renderer.Translate(map, params);
  LM_ASSERT_OK(images);
  ASSERT_EQ(images->size(), 5u);
  for (const auto& image : *images) EXPECT_EQ(image, RenderFlat(map));
  params.samples_per_map = 0;
  LM_EXPECT_KIND(renderer.Translate(map, params), ErrorKind::kPrecondition);
  params = TranslationParams{};
  params.guidance_strength = 0;
  EXPECT_FALSE(params.Validate().ok());
}

TEST(BackgroundFillInpainterTest, EmptyRegionIsIdentity) {
  BackgroundFillInpainter inpainter(DefaultPalette());
  std::mt19937_64 rng(2);
  RgbImage image = RenderFlat(RandomMap(rng, 7, 5, 32));
  auto out = inpainter.Inpaint(image, BinaryMask(7, 5));
  LM_ASSERT_OK(out);
  EXPECT_EQ(*out, image);
}

TEST(BackgroundFillInpainterTest, TieBetweenPersonAndBackgroundGoesToLabelZero) {
  // The dog block's outer ring has six person and six background pixels.
  SemanticMap map =
      MapFromRows({"11111", "12200", "12200", "00000", "00000"});
  BackgroundFillInpainter inpainter(DefaultPalette());
  RgbImage image = RenderFlat(map);
  auto out = inpainter.Inpaint(image, map.MaskOf(2));
  LM_ASSERT_OK(out);
  for (int y = 1; y <= 2; ++y) {
    for (int x = 1; x <= 2; ++x) EXPECT_EQ(out->at(x, y), kBlack);
  }
}

TEST(BackgroundFillInpainterTest, MajorityColorFillsTheRegion) {
  SemanticMap map =
      MapFromRows({"11111", "12210", "12200", "00000", "00000"});
  BackgroundFillInpainter inpainter(DefaultPalette());
  RgbImage image = RenderFlat(map);
  auto out = inpainter.Inpaint(image, map.MaskOf(2));
  LM_ASSERT_OK(out);
  const Rgb person = DefaultPalette()->ColorOf(kPerson);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) {
      const Rgb want = map.at(x, y) == 2 ? person : image.at(x, y);
      EXPECT_EQ(out->at(x, y), want) << x << "," << y;
    }
  }
}

TEST(BackgroundFillInpainterTest, FullCanvasBecomesBackground) {
  BackgroundFillInpainter inpainter(DefaultPalette());
  RgbImage image(4, 3, DefaultPalette()->ColorOf(5));
  auto out = inpainter.Inpaint(image, BinaryMask(4, 3, true));
  LM_ASSERT_OK(out);
  EXPECT_EQ(*out, RgbImage(4, 3, kBlack));
}

TEST(BackgroundFillInpainterTest, EachRegionPartIsFilledSeparately) {
  SemanticMap map = MapFromRows({"111000", "131020", "111000"});
  BackgroundFillInpainter inpainter(DefaultPalette());
  BinaryMask region = MaskFromRows({"......", ".#..#.", "......"});
  auto out = inpainter.Inpaint(RenderFlat(map), region);
  LM_ASSERT_OK(out);
  EXPECT_EQ(out->at(1, 1), DefaultPalette()->ColorOf(kPerson));
  EXPECT_EQ(out->at(4, 1), kBlack);
}

TEST(BackgroundFillInpainterTest, NeverTouchesPixelsOutsideTheRegion) {
  std::mt19937_64 rng(8);
  BackgroundFillInpainter inpainter(DefaultPalette());
  for (int trial = 0; trial < 50; ++trial) {
    RgbImage image = RenderFlat(RandomMap(rng, 12, 9, 6));
    BinaryMask region = testing::RandomMask(rng, 12, 9, 0.3);
    auto out = inpainter.Inpaint(image, region);
    LM_ASSERT_OK(out);
    for (int y = 0; y < 9; ++y) {
      for (int x = 0; x < 12; ++x) {
        if (!region.Get(x, y)) ASSERT_EQ(out->at(x, y), image.at(x, y));
      }
    }
  }
}

TEST(BackgroundFillInpainterTest, ShapeMismatch) {
  BackgroundFillInpainter inpainter(DefaultPalette());
  LM_EXPECT_KIND(inpainter.Inpaint(RgbImage(3, 3), BinaryMask(3, 2)),
                 ErrorKind::kShapeError);
}

TEST(CaptionSyntheticTest, NoFaultsFollowsTheTemplate) {
  SyntheticCaption c =
      CaptionCounts({{"dog", 2}, {"person", 1}}, FaultPolicy{});
  EXPECT_EQ(c.caption, "a picture of two dogs and a person");
  EXPECT_TRUE(c.injected.empty());
}

TEST(CaptionSyntheticTest, IrregularPlural) {
  EXPECT_EQ(CaptionCounts({{"person", 3}}, FaultPolicy{}).caption,
            "a picture of three people");
  EXPECT_EQ(CaptionCounts({{"sheep", 2}, {"bus", 2}}, FaultPolicy{}).caption,
            "a picture of two buses and two sheep");
  EXPECT_EQ(CaptionCounts({{"elephant", 1}, {"teddy bear", 21}},
                          FaultPolicy{})
                .caption,
            "a picture of an elephant and twenty-one teddy bears");
}

TEST(CaptionSyntheticTest, EmptySceneFallback) {
  SyntheticCaption c = CaptionCounts({}, FaultPolicy{});
  EXPECT_EQ(c.caption, "a picture of a scene");
  EXPECT_TRUE(c.injected.empty());
}

TEST(CaptionSyntheticTest, ForcedOmissionOfTarget) {
  FaultPolicy policy;
  policy.p_omit = 1.0;
  policy.target_category = "dog";
  SyntheticCaption c = CaptionCounts({{"dog", 2}, {"person", 1}}, policy);
  EXPECT_EQ(c.caption, "a picture of a person");
  ASSERT_EQ(c.injected.size(), 1u);
  EXPECT_EQ(c.injected[0],
            (FaultRecord{FaultKind::kOmission, "dog", "", 2, 0}));
}

TEST(CaptionSyntheticTest, ForcedMisclassification) {
  FaultPolicy policy;
  policy.p_misclassify = 1.0;
  policy.confusion_table = {{"dog", "cat"}};
  SyntheticCaption c = CaptionCounts({{"dog", 1}}, policy);
  EXPECT_EQ(c.caption, "a picture of a cat");
  ASSERT_EQ(c.injected.size(), 1u);
  EXPECT_EQ(c.injected[0],
            (FaultRecord{FaultKind::kMisclassification, "dog", "cat", 1, 1}));
}

TEST(CaptionSyntheticTest, MisclassificationNeedsAnAbsentSubstitute) {
  FaultPolicy policy;
  policy.p_misclassify = 1.0;
  policy.confusion_table = {{"dog", "cat"}};
  SyntheticCaption c = CaptionCounts({{"dog", 1}, {"cat", 1}}, policy);
  EXPECT_TRUE(c.injected.empty());
}

TEST(CaptionSyntheticTest, ForcedMiscountAddsOne) {
  FaultPolicy policy;
  policy.p_miscount = 1.0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    policy.rng_seed = seed;
    const std::map<std::string, int> truth{{"dog", 2}, {"person", 1}};
    SyntheticCaption c = CaptionCounts(truth, policy);
    ASSERT_EQ(c.injected.size(), 1u);
    const FaultRecord& f = c.injected[0];
    EXPECT_EQ(f.kind, FaultKind::kMiscount);
    EXPECT_EQ(f.true_count, truth.at(f.category));
    EXPECT_EQ(f.stated_count, f.true_count + 1);
  }
}

TEST(CaptionSyntheticTest, LogReplaysToTheCaption) {
  std::mt19937_64 rng(99);
  const auto names = DefaultPalette()->CategoryNames();
  std::uniform_int_distribution<size_t> pick(0, names.size() - 1);
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::map<std::string, int> truth;
    const int k = trial % 5;
    for (int i = 0; i < k; ++i) truth[names[pick(rng)]] = count(rng);
    FaultPolicy policy;
    policy.p_omit = p(rng);
    policy.p_misclassify = p(rng);
    policy.p_miscount = p(rng);
    policy.rng_seed = rng();
    for (int i = 0; i < 5; ++i) {
      policy.confusion_table[names[pick(rng)]] = names[pick(rng)];
    }
    std::erase_if(policy.confusion_table,
                  [](const auto& kv) { return kv.first == kv.second; });
    SyntheticCaption c = CaptionCounts(truth, policy);
    ASSERT_EQ(c.caption, CaptionGrammar::Default().Render(
                             ApplyFaults(truth, c.injected),
                             Cardinals::Default()));
    ASSERT_EQ(CaptionCounts(truth, policy).caption, c.caption);
  }
}

TEST(FaultPolicyTest, JsonRoundTripAndValidation) {
  FaultPolicy policy;
  policy.p_omit = 0.25;
  policy.confusion_table = {{"dog", "cat"}};
  policy.rng_seed = 12345678901234567ULL;
  policy.target_category = "dog";
  auto back = FaultPolicy::FromJson(policy.ToJson());
  LM_ASSERT_OK(back);
  EXPECT_EQ(back->ToJson(), policy.ToJson());
  EXPECT_TRUE(policy.Validate(*DefaultPalette()).ok());
  policy.p_miscount = 1.5;
  EXPECT_FALSE(policy.Validate(*DefaultPalette()).ok());
  policy.p_miscount = 0;
  policy.confusion_table = {{"dog", "dog"}};
  LM_EXPECT_KIND(policy.Validate(*DefaultPalette()),
                 ErrorKind::kPaletteMismatch);
  EXPECT_FALSE(FaultPolicy::FromJson("[1]").ok());
}

TEST(FaultInjectingCaptionerTest, CaptionsRenderedScenes) {
  SemanticMap map = MapFromRows({"20200", "00000", "00011"});
  FaultInjectingCaptioner captioner(DefaultPalette(), FaultPolicy{});
  auto result = captioner.CaptionWithLog(RenderFlat(map));
  LM_ASSERT_OK(result);
  EXPECT_EQ(result->caption, "a picture of two dogs and a person");
  EXPECT_TRUE(result->has_fault_log);
  auto plain = captioner.Caption(RenderFlat(map));
  LM_ASSERT_OK(plain);
  EXPECT_EQ(*plain, result->caption);
}

TEST(WireTest, SegmentResponseRoundTrip) {
  ExactSegmenter segmenter(DefaultPalette());
  SemanticMap map = MapFromRows({"1100", "0033", "2000"});
  auto seg = segmenter.Segment(RenderFlat(map));
  LM_ASSERT_OK(seg);
  auto back = wire::ParseSegmentResponse(wire::SegmentResponse(*seg),
                                         DefaultPalette());
  LM_ASSERT_OK(back);
  EXPECT_EQ(back->map, seg->map);
  EXPECT_EQ(back->candidates, seg->candidates);
  ASSERT_EQ(back->instances.size(), seg->instances.size());
  for (size_t i = 0; i < seg->instances.size(); ++i) {
    EXPECT_EQ(back->instances[i].mask(), seg->instances[i].mask());
    EXPECT_EQ(back->instances[i].category(), seg->instances[i].category());
  }
}

TEST(WireTest, InlinePaletteMustAgree) {
  ExactSegmenter segmenter(DefaultPalette());
  auto seg = segmenter.Segment(RenderFlat(MapFromRows({"12"})));
  LM_ASSERT_OK(seg);
  wire::Json body = wire::SegmentResponse(*seg);
  body["palette"][0]["index"] = 40;
  LM_EXPECT_KIND(wire::ParseSegmentResponse(body, DefaultPalette()),
                 ErrorKind::kPaletteMismatch);
}

TEST(WireTest, MalformedBodiesAreBackendErrors) {
  LM_EXPECT_KIND(wire::ParseImageResponse(wire::Json::object()),
                 ErrorKind::kBackendError);
  LM_EXPECT_KIND(wire::ParseImageResponse({{"image", "***"}}),
                 ErrorKind::kBackendError);
  LM_EXPECT_KIND(wire::ParseCaptionResponse({{"caption", ""}}),
                 ErrorKind::kBackendError);
  LM_EXPECT_KIND(wire::ParseTranslateResponse({{"images", 3}}),
                 ErrorKind::kBackendError);
}

TEST(WireTest, TranslateRequestCarriesParameters) {
  SemanticMap map = MapFromRows({"01"});
  TranslationParams params;
  wire::Json body = wire::TranslateRequest(map, params);
  EXPECT_EQ(body["guidance_strength"], 1.3);
  EXPECT_EQ(body["diffusion_steps"], 250);
  EXPECT_EQ(body["samples"], 5);
  auto back = wire::ParseTranslateRequest(body, DefaultPalette());
  LM_ASSERT_OK(back);
  EXPECT_EQ(back->first, map);
  EXPECT_EQ(back->second.diffusion_steps, 250);
}

}  // namespace
}  // namespace layoutmorph
