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


#include "layoutmorph/layout_editor.h"

#include <map>
#include <random>

#include "gtest/gtest.h"
#include "layoutmorph/synthetic_scene.h"
#include "test_util.h"

namespace layoutmorph {
namespace {

using ::layoutmorph::testing::MapFromRows;
using ::layoutmorph::testing::MaskFromRows;
using ::layoutmorph::testing::RandomBlob;

ObjectInstance Obj(BinaryMask mask, std::string id = "obj0",
                   std::string category = "dog", int z = 0) {
  return *ObjectInstance::Create(std::move(id), std::move(category),
                                 std::move(mask), z);
}

BinaryMask Rect(int w, int h, const BoundingBox& b) {
  BinaryMask m(w, h);
  for (int y = b.y_min; y <= b.y_max; ++y) {
    for (int x = b.x_min; x <= b.x_max; ++x) m.Set(x, y);
  }
  return m;
}

EditConfig Only(Mr mr, int budget = 1) {
  EditConfig c;
  c.enabled_mrs = {mr};
  c.step_budget = budget;
  return c;
}

TEST(MrTest, TagsRoundTrip) {
  for (Mr mr : {Mr::kTranslate, Mr::kRotate, Mr::kScale, Mr::kMirror}) {
    EXPECT_EQ(*ParseMr(MrTag(mr)), mr);
  }
  EXPECT_EQ(MrTag(Mr::kScale), "MR3");
  LM_EXPECT_KIND(ParseMr("MR5"), ErrorKind::kPrecondition);
}

TEST(EditConfigTest, ValidatesRanges) {
  EXPECT_TRUE(EditConfig{}.Validate().ok());
  EditConfig c;
  c.step_budget = 0;
  LM_EXPECT_KIND(c.Validate(), ErrorKind::kPrecondition);
  c = EditConfig{};
  c.enabled_mrs.clear();
  LM_EXPECT_KIND(c.Validate(), ErrorKind::kPrecondition);
  c = EditConfig{};
  c.scale_min = 1.0;
  LM_EXPECT_KIND(c.Validate(), ErrorKind::kPrecondition);
  c = EditConfig{};
  c.rotation_max_deg = 1.0;
  LM_EXPECT_KIND(c.Validate(), ErrorKind::kPrecondition);
  c = EditConfig{};
  c.min_retained_area_fraction = 0.0;
  LM_EXPECT_KIND(c.Validate(), ErrorKind::kPrecondition);
}

TEST(EditConfigTest, JsonRoundTrip) {
  EditConfig c = Only(Mr::kRotate, 4);
  c.rotation_min_deg = -10;
  c.scale_max = 1.2;
  auto back = EditConfig::FromJson(c.ToJson());
  LM_ASSERT_OK(back);
  EXPECT_EQ(back->ToJson(), c.ToJson());
  LM_EXPECT_KIND(EditConfig::FromJson(nlohmann::json{{"enabled_mrs", {"MR9"}}}),
                 ErrorKind::kPrecondition);
}

TEST(EditTraceTest, JsonRoundTripIsExact) {
  EditTrace t;
  t.steps.push_back({"obj1", Mr::kTranslate, -3, 7});
  t.steps.push_back({"obj0", Mr::kRotate, 0, 0, -17.123456789012345});
  t.steps.push_back({"obj0", Mr::kScale, 0, 0, 0.0, 0.7000000000000001});
  t.steps.push_back({"obj2", Mr::kMirror});
  const nlohmann::json j = t.ToJson();
  EXPECT_EQ(j[3]["mirror"], true);
  auto back = EditTrace::FromJson(nlohmann::json::parse(j.dump()));
  LM_ASSERT_OK(back);
  EXPECT_EQ(*back, t);
}

TEST(TranslateTest, RejectsShiftsOffTheLeftEdge) {
  const ObjectInstance obj = Obj(Rect(10, 10, {0, 2, 4, 5}));
  LM_EXPECT_KIND(Translate(obj, -1, 0, {10, 10}),
                 ErrorKind::kConstraintViolation);
  LM_EXPECT_KIND(Translate(obj, 8, 0, {10, 10}),
                 ErrorKind::kConstraintViolation);
  LM_EXPECT_KIND(Translate(obj, 0, 5, {10, 10}),
                 ErrorKind::kConstraintViolation);
  auto far = Translate(obj, 7, 4, {10, 10});
  LM_ASSERT_OK(far);
  EXPECT_EQ(far->bbox(), (BoundingBox{7, 9, 8, 9}));
}

TEST(TranslateTest, ZeroShiftIsIdentity) {
  std::mt19937_64 rng(1);
  const ObjectInstance obj = Obj(RandomBlob(rng, 12, 9));
  auto same = Translate(obj, 0, 0, {12, 9});
  LM_ASSERT_OK(same);
  EXPECT_EQ(same->mask(), obj.mask());
  EXPECT_EQ(same->bbox(), obj.bbox());
}

TEST(TranslateTest, InverseShiftRestoresMask) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10000; ++trial) {
    const Canvas canvas{std::uniform_int_distribution<int>(1, 24)(rng),
                        std::uniform_int_distribution<int>(1, 24)(rng)};
    const ObjectInstance obj = Obj(RandomBlob(rng, canvas.width, canvas.height));
    const ShiftRange r = LegalShifts(obj.bbox(), canvas);
    const int dx = std::uniform_int_distribution<int>(r.dx_min, r.dx_max)(rng);
    const int dy = std::uniform_int_distribution<int>(r.dy_min, r.dy_max)(rng);
    auto moved = Translate(obj, dx, dy, canvas);
    ASSERT_TRUE(moved.ok());
    ASSERT_EQ(moved->mask().Count(), obj.mask().Count());
    const BoundingBox& b = obj.bbox();
    ASSERT_EQ(moved->bbox(), (BoundingBox{b.x_min + dx, b.x_max + dx,
                                          b.y_min + dy, b.y_max + dy}));
    auto back = Translate(*moved, -dx, -dy, canvas);
    ASSERT_TRUE(back.ok());
    ASSERT_EQ(back->mask(), obj.mask()) << "trial " << trial;
  }
}

TEST(SampleTranslationTest, SinglePixelRangeIsExact) {
  BinaryMask m(10, 10);
  m.Set(3, 6);
  const ShiftRange r = LegalShifts(Obj(m).bbox(), {10, 10});
  EXPECT_EQ(r.dx_min, -3);
  EXPECT_EQ(r.dx_max, 6);
  EXPECT_EQ(r.dy_min, -6);
  EXPECT_EQ(r.dy_max, 3);
}

TEST(SampleTranslationTest, FullWidthObjectOnlyMovesVertically) {
  const ObjectInstance obj = Obj(Rect(8, 8, {0, 7, 2, 3}));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto shift = SampleTranslation(obj, {8, 8}, rng);
    LM_ASSERT_OK(shift);
    EXPECT_EQ(shift->first, 0);
    EXPECT_NE(shift->second, 0);
    EXPECT_GE(shift->second, -2);
    EXPECT_LE(shift->second, 4);
  }
}

TEST(SampleTranslationTest, FullCanvasObjectCannotMove) {
  std::mt19937_64 rng(4);
  LM_EXPECT_KIND(SampleTranslation(Obj(BinaryMask(5, 4, true)), {5, 4}, rng),
                 ErrorKind::kNoLegalMove);
  // Only the zero shift is legal, which is excluded.
  BinaryMask one(1, 1, true);
  LM_EXPECT_KIND(SampleTranslation(Obj(one), {1, 1}, rng),
                 ErrorKind::kNoLegalMove);
}

TEST(SampleTranslationTest, UniformOverNonZeroShifts) {
  BinaryMask m(3, 3);
  m.Set(1, 1);
  const ObjectInstance obj = Obj(m);
  std::mt19937_64 rng(5);
  std::map<std::pair<int, int>, int> hist;
  constexpr int kDraws = 16000;
  for (int i = 0; i < kDraws; ++i) ++hist[*SampleTranslation(obj, {3, 3}, rng)];
  ASSERT_EQ(hist.size(), 8u);
  EXPECT_EQ(hist.count({0, 0}), 0u);
  for (const auto& [shift, n] : hist) {
    EXPECT_NEAR(n, kDraws / 8.0, 200.0);
  }
}

TEST(SampleTranslationTest, SamplesStayInCanvas) {
  std::mt19937_64 rng(6);
  for (int mask_i = 0; mask_i < 100; ++mask_i) {
    const Canvas canvas{std::uniform_int_distribution<int>(2, 40)(rng),
                        std::uniform_int_distribution<int>(2, 40)(rng)};
    const ObjectInstance obj = Obj(RandomBlob(rng, canvas.width, canvas.height));
    for (int i = 0; i < 100; ++i) {
      auto shift = SampleTranslation(obj, canvas, rng);
      if (!shift.ok()) {
        ASSERT_EQ(obj.bbox(),
                  (BoundingBox{0, canvas.width - 1, 0, canvas.height - 1}));
        break;
      }
      const BoundingBox& b = obj.bbox();
      ASSERT_GE(b.x_min + shift->first, 0);
      ASSERT_LE(b.x_max + shift->first, canvas.width - 1);
      ASSERT_GE(b.y_min + shift->second, 0);
      ASSERT_LE(b.y_max + shift->second, canvas.height - 1);
      ASSERT_NE(*shift, std::make_pair(0, 0));
    }
  }
}

TEST(ObjectCenterTest, Examples) {
  const Center a = ObjectCenter(Obj(Rect(40, 40, {10, 30, 0, 20})));
  EXPECT_EQ(a.x(), 20.0);
  EXPECT_EQ(a.y(), 10.0);
  const Center b = ObjectCenter(Obj(Rect(8, 8, {0, 0, 0, 0})));
  EXPECT_EQ(b, (Center{0, 0}));
  const Center c = ObjectCenter(Obj(Rect(8, 8, {1, 4, 2, 5})));
  EXPECT_EQ(c.x(), 2.5);
  EXPECT_EQ(c.y(), 3.5);
}

TEST(RotateTest, ZeroIsIdentity) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const ObjectInstance obj = Obj(RandomBlob(rng, 20, 15));
    double retained = 0;
    auto out = Rotate(obj, 0.0, {20, 15}, &retained);
    LM_ASSERT_OK(out);
    EXPECT_EQ(out->mask(), obj.mask());
    EXPECT_EQ(retained, 1.0);
  }
}

TEST(RotateTest, QuarterTurnOfSquare) {
  // Odd side: integer center, the turn is exact.
  const ObjectInstance odd = Obj(Rect(20, 20, {5, 11, 6, 12}));
  auto r = Rotate(odd, 90.0, {20, 20});
  LM_ASSERT_OK(r);
  EXPECT_EQ(r->mask(), odd.mask());
  // Even side: half-pixel center, boundary jitter allowed.
  const ObjectInstance even = Obj(Rect(20, 20, {5, 12, 6, 13}));
  auto e = Rotate(even, 90.0, {20, 20});
  LM_ASSERT_OK(e);
  const double n = static_cast<double>(even.mask().Count());
  EXPECT_NEAR(static_cast<double>(e->mask().Count()), n, 0.05 * n);
  const BoundingBox& b = e->bbox();
  EXPECT_LE(std::abs(b.x_min - 5), 1);
  EXPECT_LE(std::abs(b.x_max - 12), 1);
  EXPECT_LE(std::abs(b.y_min - 6), 1);
  EXPECT_LE(std::abs(b.y_max - 13), 1);
}

TEST(RotateTest, SymmetricMasksKeepTheirCenter) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const int w = 48;
    const int h = 48;
    const int bw = std::uniform_int_distribution<int>(1, 16)(rng);
    const int bh = std::uniform_int_distribution<int>(1, 16)(rng);
    const int x0 = std::uniform_int_distribution<int>(12, 20)(rng);
    const int y0 = std::uniform_int_distribution<int>(12, 20)(rng);
    const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
    const ObjectInstance obj =
        Obj(SymmetricShape(kind, {x0, x0 + bw - 1, y0, y0 + bh - 1}, w, h));
    const double theta = std::uniform_real_distribution<double>(-30, 30)(rng);
    auto out = Rotate(obj, theta, {w, h});
    LM_ASSERT_OK(out);
    const Center before = ObjectCenter(obj);
    const Center after = ObjectCenter(*out);
    ASSERT_LE(std::abs(after.x() - before.x()), 1.0)
        << "theta " << theta << " box " << ToString(obj.bbox());
    ASSERT_LE(std::abs(after.y() - before.y()), 1.0);
  }
}

TEST(RotateTest, ClippedAtCanvasEdgeReportsRetainedArea) {
  const ObjectInstance obj = Obj(Rect(12, 12, {0, 7, 0, 3}));
  double retained = 0;
  auto out = Rotate(obj, 45.0, {12, 12}, &retained);
  LM_ASSERT_OK(out);
  EXPECT_LT(retained, 1.0);
  EXPECT_GT(retained, 0.0);
}

TEST(ScaleTest, OneIsIdentity) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const ObjectInstance obj = Obj(RandomBlob(rng, 17, 13));
    auto out = Scale(obj, 1.0, {17, 13});
    LM_ASSERT_OK(out);
    EXPECT_EQ(out->mask(), obj.mask());
  }
}

TEST(ScaleTest, HalfRectangleDims) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 500; ++i) {
    const int w = std::uniform_int_distribution<int>(2, 20)(rng);
    const int h = std::uniform_int_distribution<int>(2, 20)(rng);
    const ObjectInstance obj = Obj(Rect(64, 64, {20, 20 + w - 1, 20, 20 + h - 1}));
    auto out = Scale(obj, 0.5, {64, 64});
    LM_ASSERT_OK(out);
    EXPECT_LE(std::abs(out->bbox().width() - w / 2.0), 1.0) << w;
    EXPECT_LE(std::abs(out->bbox().height() - h / 2.0), 1.0) << h;
  }
}

TEST(ScaleTest, GrowthNearBorderIsClipped) {
  const ObjectInstance obj = Obj(Rect(16, 16, {10, 15, 10, 15}));
  double retained = 0;
  auto out = Scale(obj, 1.4, {16, 16}, &retained);
  LM_ASSERT_OK(out);
  EXPECT_FALSE(out->mask().Empty());
  EXPECT_LT(retained, 1.0);
  EXPECT_EQ(out->bbox().x_max, 15);
}

TEST(ScaleTest, HollowCenterShrinksToNothing) {
  const ObjectInstance ring = Obj(MaskFromRows({".....",  //
                                                ".###.",  //
                                                ".#.#.",  //
                                                ".###.",  //
                                                "....."}));
  LM_EXPECT_KIND(Scale(ring, 0.1, {5, 5}), ErrorKind::kDegenerateTransform);
  LM_EXPECT_KIND(Scale(ring, 0.0, {5, 5}), ErrorKind::kDegenerateTransform);
}

TEST(MirrorTest, LShape) {
  const ObjectInstance l = Obj(MaskFromRows({".....",  //
                                             ".#...",  //
                                             ".#...",  //
                                             ".###.",  //
                                             "....."}));
  EXPECT_EQ(Mirror(l).mask(), MaskFromRows({".....",  //
                                            "...#.",  //
                                            "...#.",  //
                                            ".###.",  //
                                            "....."}));
}

TEST(MirrorTest, EvenWidthReflectsWithinBox) {
  const ObjectInstance obj = Obj(MaskFromRows({"#...",  //
                                               "##..",  //
                                               "####"}));
  EXPECT_EQ(Mirror(obj).mask(), MaskFromRows({"...#",  //
                                              "..##",  //
                                              "####"}));
}

TEST(MirrorTest, SymmetricIsFixedPoint) {
  for (int kind = 0; kind < 3; ++kind) {
    const ObjectInstance obj = Obj(SymmetricShape(kind, {3, 12, 2, 8}, 16, 12));
    EXPECT_EQ(Mirror(obj).mask(), obj.mask());
  }
}

TEST(MirrorTest, TwiceIsIdentity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10000; ++trial) {
    const ObjectInstance obj = Obj(RandomBlob(rng, 15, 11));
    const ObjectInstance once = Mirror(obj);
    ASSERT_EQ(once.bbox(), obj.bbox());
    ASSERT_EQ(once.mask().Count(), obj.mask().Count());
    ASSERT_EQ(Mirror(once).mask(), obj.mask());
  }
}

TEST(ApplyStepTest, DispatchesOnRelation) {
  const ObjectInstance obj = Obj(MaskFromRows({"##.", "#..", "..."}));
  auto moved = ApplyStep(obj, {"obj0", Mr::kTranslate, 1, 1}, {3, 3});
  LM_ASSERT_OK(moved);
  EXPECT_EQ(moved->mask(), MaskFromRows({"...", ".##", ".#."}));
  auto flipped = ApplyStep(obj, {"obj0", Mr::kMirror}, {3, 3});
  EXPECT_EQ(flipped->mask(), MaskFromRows({"##.", ".#.", "..."}));
}

class EditTest : public ::testing::Test {
 protected:
  // A cat and a dog on a blank 12x8 canvas.
  void SetUp() override {
    const SemanticMap map = MapFromRows({"000000000000",  //
                                         "011000000000",  //
                                         "011000000000",  //
                                         "000000000000",  //
                                         "000000022200",  //
                                         "000000022200",  //
                                         "000000000000",  //
                                         "000000000000"});
    background_ = SemanticMap::Blank(12, 8, DefaultPalette());
    singles_ = SplitInstances(map);
    original_ = map;
  }
  SemanticMap background_;
  SemanticMap original_;
  std::vector<ObjectInstance> singles_;
};

TEST_F(EditTest, MirrorOfSymmetricSinglesChangesNothing) {
  std::mt19937_64 rng(12);
  auto r = Edit(background_, singles_, Only(Mr::kMirror), rng);
  LM_ASSERT_OK(r);
  EXPECT_EQ(r->map, original_);
  ASSERT_EQ(r->trace.steps.size(), 1u);
  EXPECT_EQ(r->trace.steps[0].mr, Mr::kMirror);
}

TEST_F(EditTest, TranslationDiffIsOldAndNewPixels) {
  // One object, so nothing can cover the moved pixels.
  const std::vector<ObjectInstance> one = {singles_[0]};
  const SemanticMap before_map = Compose(background_, one);
  for (uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    auto r = Edit(background_, one, Only(Mr::kTranslate), rng);
    LM_ASSERT_OK(r);
    ASSERT_EQ(r->trace.steps.size(), 1u);
    const BinaryMask& before = one[0].mask();
    const BinaryMask& after = r->singles[0].mask();
    const BinaryMask expected = before.Or(after).Minus(before.And(after));
    BinaryMask diff(12, 8);
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 12; ++x) {
        if (r->map.at(x, y) != before_map.at(x, y)) diff.Set(x, y);
      }
    }
    EXPECT_EQ(diff, expected) << "seed " << seed;
  }
}

TEST_F(EditTest, SameSeedSameResult) {
  EditConfig config;
  config.step_budget = 6;
  std::mt19937_64 a(99);
  std::mt19937_64 b(99);
  auto ra = Edit(background_, singles_, config, a);
  auto rb = Edit(background_, singles_, config, b);
  LM_ASSERT_OK(ra);
  LM_ASSERT_OK(rb);
  EXPECT_EQ(ra->map, rb->map);
  EXPECT_EQ(ra->trace, rb->trace);
}

TEST_F(EditTest, Errors) {
  std::mt19937_64 rng(13);
  LM_EXPECT_KIND(Edit(background_, {}, EditConfig{}, rng),
                 ErrorKind::kPrecondition);
  LM_EXPECT_KIND(
      Edit(background_, {Obj(BinaryMask(3, 3, true))}, EditConfig{}, rng),
      ErrorKind::kShapeError);
  // A canvas-filling single cannot be translated at all.
  const ObjectInstance full = Obj(BinaryMask(12, 8, true));
  LM_EXPECT_KIND(Edit(background_, {full}, Only(Mr::kTranslate), rng),
                 ErrorKind::kEditExhausted);
}

TEST(EditSceneTest, CountsPreservedAndTracesReplay) {
  SyntheticSceneOptions options;
  EditConfig config;
  config.step_budget = 10;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const SyntheticScene scene =
        GenerateScene(options, DefaultPalette(), seed, "s");
    const SceneRecord& r = scene.record;
    const SemanticMap background =
        SemanticMap::Blank(r.semantic_map.width(), r.semantic_map.height(),
                           DefaultPalette());
    std::mt19937_64 rng(seed * 7919 + 1);
    auto edited = Edit(background, r.instances, config, rng);
    LM_ASSERT_OK(edited);
    ASSERT_EQ(edited->trace.steps.size(), 10u);
    EXPECT_EQ(CountComponents(edited->map), r.candidates) << "seed " << seed;
    for (const ObjectInstance& s : edited->singles) {
      EXPECT_FALSE(s.mask().Empty());
    }

    // Every recorded shift satisfied the canvas constraints when applied.
    std::vector<ObjectInstance> state = r.instances;
    const Canvas canvas{background.width(), background.height()};
    for (const EditStep& step : edited->trace.steps) {
      auto it = std::find_if(state.begin(), state.end(), [&](const auto& o) {
        return o.instance_id() == step.instance_id;
      });
      ASSERT_NE(it, state.end());
      if (step.mr == Mr::kTranslate) {
        const ShiftRange range = LegalShifts(it->bbox(), canvas);
        EXPECT_GE(step.dx, range.dx_min);
        EXPECT_LE(step.dx, range.dx_max);
        EXPECT_GE(step.dy, range.dy_min);
        EXPECT_LE(step.dy, range.dy_max);
      }
      *it = *ApplyStep(*it, step, canvas);
    }

    auto trace = EditTrace::FromJson(
        nlohmann::json::parse(edited->trace.ToJson().dump()));
    LM_ASSERT_OK(trace);
    auto replayed = ReplayTrace(background, r.instances, *trace);
    LM_ASSERT_OK(replayed);
    EXPECT_EQ(replayed->map, edited->map);
  }
}

TEST(ReplayTraceTest, UnknownInstance) {
  const SemanticMap bg = SemanticMap::Blank(4, 4, DefaultPalette());
  EditTrace trace;
  trace.steps.push_back({"ghost", Mr::kMirror});
  LM_EXPECT_KIND(ReplayTrace(bg, {Obj(BinaryMask(4, 4, true))}, trace),
                 ErrorKind::kUnknownTarget);
}

}  // namespace
}  // namespace layoutmorph
