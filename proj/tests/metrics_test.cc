// Copyright 2026 The GuiKit Authors.
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

#include "guikit/metrics.h"

#include <gtest/gtest.h>

#include <random>

namespace guikit {
namespace {

StepRecord Rec(Action gold, std::optional<Action> pred,
               std::optional<PixelBox> box = std::nullopt,
               ScreenExtents screen = {1000, 1000}) {
  return StepRecord{"s", std::move(gold), box, std::move(pred), screen};
}

TEST(ClickHitTest, ClosedEdges) {
  const PixelBox b = PixelBox::FromEdges(10, 20, 30, 40);
  EXPECT_TRUE(ClickHit({10, 20}, b));
  EXPECT_TRUE(ClickHit({30, 40}, b));
  EXPECT_FALSE(ClickHit({31, 40}, b));
  EXPECT_FALSE(ClickHit({9, 30}, b));
}

TEST(OpF1Test, HandValues) {
  EXPECT_DOUBLE_EQ(OpF1("INPUT hello world", "INPUT hello"), 0.8);
  EXPECT_DOUBLE_EQ(OpF1("input Hello", "INPUT hello"), 1.0);
  EXPECT_DOUBLE_EQ(OpF1("CLICK", "SELECT red"), 0.0);
  EXPECT_DOUBLE_EQ(OpF1("", ""), 1.0);
  EXPECT_DOUBLE_EQ(OpF1("a a b", "a b b"), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(OpF1(OperationString(Action::Point("CLICK", 1, 2)),
                        OperationString(Action::Point("CLICK", 900, 5))),
                   1.0);
}

TEST(StepSuccessTest, NeedsElementAndOperation) {
  const PixelBox box = PixelBox::FromEdges(0, 0, 100, 100);
  EXPECT_TRUE(StepSuccess(Rec(Action::Point("CLICK", 50, 50), Action::Point("CLICK", 99, 1), box)));
  EXPECT_FALSE(StepSuccess(Rec(Action::Point("CLICK", 50, 50), Action::Point("CLICK", 101, 1), box)));
  EXPECT_FALSE(StepSuccess(Rec(Action::Point("CLICK", 50, 50), Action::Point("HOVER", 50, 50), box)));
  EXPECT_TRUE(StepSuccess(Rec(Action::Text("INPUT", "Hi "), Action::Text("INPUT", "hi"))));
  EXPECT_FALSE(StepSuccess(Rec(Action::Text("INPUT", "hi"), Action::Text("INPUT", "ho"))));
  EXPECT_FALSE(StepSuccess(Rec(Action::Bare("PRESS_BACK"), std::nullopt)));
}

TEST(ActionMatchTest, TapThresholdBoundary) {
  // 0.09 * sqrt(2) = 0.1273 is inside the tolerance, 0.1 * sqrt(2) = 0.1414 is not.
  EXPECT_TRUE(ActionMatch(Rec(Action::Point("CLICK", 0, 0), Action::Point("CLICK", 90, 90))));
  EXPECT_FALSE(ActionMatch(Rec(Action::Point("CLICK", 0, 0), Action::Point("CLICK", 100, 100))));
  EXPECT_TRUE(ActionMatch(Rec(Action::Point("CLICK", 0, 0), Action::Point("CLICK", 140, 0))));
  EXPECT_FALSE(ActionMatch(Rec(Action::Point("CLICK", 0, 0), Action::Point("CLICK", 141, 0))));
}

TEST(ActionMatchTest, AugmentedBoxRescuesDistantTaps) {
  const PixelBox wide = PixelBox::FromEdges(0, 400, 1000, 440);
  const Action gold = Action::Point("CLICK", 100, 420);
  EXPECT_TRUE(ActionMatch(Rec(gold, Action::Point("CLICK", 900, 420), wide)));
  EXPECT_FALSE(ActionMatch(Rec(gold, Action::Point("CLICK", 900, 420))));
  // sqrt(2.4) * 40 / 2 = 30.98 px of vertical slack about the center.
  EXPECT_TRUE(InAugmentedBox({500, 450}, wide));
  EXPECT_FALSE(InAugmentedBox({500, 451}, wide));
}

TEST(ActionMatchTest, ScrollComparesAxisOnly) {
  const auto up = Action::Scroll(ScrollDirection::kUp);
  EXPECT_TRUE(ActionMatch(Rec(up, Action::Scroll(ScrollDirection::kDown))));
  EXPECT_FALSE(ActionMatch(Rec(up, Action::Scroll(ScrollDirection::kLeft))));
  EXPECT_FALSE(ActionMatch(Rec(up, Action::Point("CLICK", 1, 1))));
  EXPECT_TRUE(ActionMatch(Rec(Action::Bare("PRESS_HOME"), Action::Bare("PRESS_HOME"))));
  EXPECT_FALSE(ActionMatch(Rec(Action::Bare("PRESS_HOME"), Action::Bare("PRESS_BACK"))));
}

TEST(EvaluateTest, EmptyInputLeavesMetricsAbsent) {
  const EvalReport r = Evaluate({});
  EXPECT_EQ(r.step_count, 0u);
  EXPECT_FALSE(r.ele_acc);
  EXPECT_FALSE(r.ams);
  EXPECT_FALSE(r.click_acc);
  EXPECT_TRUE(ReportToJson(r)["metrics"]["step_sr"].is_null());
  EXPECT_NE(FormatReportTable(r).find("n/a"), std::string::npos);
}

std::vector<StepRecord> RandomRecords(std::mt19937_64& rng, size_t n, ScreenExtents screen) {
  std::vector<StepRecord> out;
  std::uniform_int_distribution<int64_t> xs(0, screen.w - 1), ys(0, screen.h - 1);
  for (size_t i = 0; i < n; ++i) {
    StepRecord r;
    r.id = std::to_string(i);
    r.screen = screen;
    switch (rng() % 3) {
      case 0: {
        r.gold = Action::Point("CLICK", xs(rng), ys(rng));
        const PixelPoint g = *r.gold.point();
        r.gold_box = PixelBox{g.x, g.y, 2 * (1 + static_cast<int64_t>(rng() % 100)),
                              2 * (1 + static_cast<int64_t>(rng() % 100))};
        break;
      }
      case 1:
        r.gold = Action::Scroll(static_cast<ScrollDirection>(rng() % 4));
        break;
      default:
        r.gold = Action::Text("INPUT", rng() % 2 ? "alpha" : "beta");
    }
    switch (rng() % 4) {
      case 0:
        r.pred = Action::Point("CLICK", xs(rng), ys(rng));
        break;
      case 1:
        r.pred = Action::Scroll(static_cast<ScrollDirection>(rng() % 4));
        break;
      case 2:
        r.pred = Action::Text("INPUT", rng() % 2 ? "alpha" : "beta");
        break;
      default:
        if (const PixelPoint* g = r.gold.point()) {
          r.pred = Action::Point("CLICK", std::min(g->x + int64_t(rng() % 50), screen.w - 1), g->y);
        }
    }
    out.push_back(r);
  }
  return out;
}

TEST(EvaluateTest, StepSuccessNeverExceedsElementAccuracy) {
  std::mt19937_64 rng(3);
  const EvalReport r = Evaluate(RandomRecords(rng, 500, {1080, 2400}));
  EXPECT_LE(*r.step_sr, *r.ele_acc);
  EXPECT_LE(*r.step_sr, *r.op_match_rate);
  EXPECT_GT(r.missing_predictions, 0u);
}

TEST(EvaluateTest, ScaleInvariantTapMatching) {
  std::mt19937_64 rng(8);
  const auto base = RandomRecords(rng, 400, {500, 1000});
  auto scaled = base;
  auto scale = [](PixelPoint& p) { p = {p.x * 3, p.y * 3}; };
  for (StepRecord& r : scaled) {
    r.screen = {1500, 3000};
    if (auto* p = std::get_if<PixelPoint>(&r.gold.pos)) scale(*p);
    if (r.pred) {
      if (auto* p = std::get_if<PixelPoint>(&r.pred->pos)) scale(*p);
    }
    if (r.gold_box) *r.gold_box = PixelBox{r.gold_box->cx * 3, r.gold_box->cy * 3,
                                           r.gold_box->w * 3, r.gold_box->h * 3};
  }
  for (size_t i = 0; i < base.size(); ++i) {
    ASSERT_EQ(ActionMatch(base[i]), ActionMatch(scaled[i])) << i;
  }
}

TEST(EvaluateTest, OracleScoresOne) {
  std::mt19937_64 rng(4);
  auto records = RandomRecords(rng, 200, {1080, 2400});
  for (StepRecord& r : records) r.pred = r.gold;
  const EvalReport report = Evaluate(records);
  EXPECT_DOUBLE_EQ(*report.ele_acc, 1.0);
  EXPECT_DOUBLE_EQ(*report.click_acc, 1.0);
  EXPECT_DOUBLE_EQ(*report.op_f1_mean, 1.0);
  EXPECT_DOUBLE_EQ(*report.step_sr, 1.0);
  EXPECT_DOUBLE_EQ(*report.ams, 1.0);
}

}  // namespace
}  // namespace guikit
