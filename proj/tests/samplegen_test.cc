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

#include "guikit/samplegen.h"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "guikit/errors.h"
#include "guikit/snapshot_io.h"
#include "guikit/text.h"
#include "test_util.h"

namespace guikit {
namespace {

using testing::MakeSnapshot;
using testing::Node;

TEST(SerializeBboxTest, Examples) {
  const BlockGrid wide{2, 1};
  EXPECT_EQ(SerializeBbox(PixelBox{616, 245, 20, 10}, wide, true), "[1, 375, 546, 22, 22]");
  EXPECT_EQ(SerializeBbox(PixelBox::FromEdges(0, 0, 448, 448), BlockGrid{1, 1}, true),
            "[0, 500, 500, 999, 999]");
  EXPECT_EQ(SerializeBbox(PixelBox::FromEdges(0, 0, 448, 448), BlockGrid{1, 1}, false),
            "[500, 500, 999, 999]");
  EXPECT_THROW(SerializeBbox(PixelBox{440, 10, 20, 4}, BlockGrid{1, 1}, true), DomainError);
  EXPECT_EQ(SerializeNormalizedBox(PixelBox::FromEdges(0, 0, 50, 100), 100, 100),
            "[250, 500, 500, 999]");
}

TEST(SerializeBboxTest, ParseIntList) {
  EXPECT_EQ(ParseIntList(" [1, 2,3] "), (std::vector<int64_t>{1, 2, 3}));
  EXPECT_EQ(ParseIntList("[]"), std::vector<int64_t>{});
  EXPECT_FALSE(ParseIntList("[1,,2]"));
  EXPECT_FALSE(ParseIntList("1, 2"));
  EXPECT_FALSE(ParseIntList("[1.5]"));
}

TEST(ResizedGeometryTest, MapsIntoGridImage) {
  const ResizedGeometry g(1280, 720, BlockGrid{2, 1});
  EXPECT_EQ(g.MapPoint({0, 0}), (PixelPoint{0, 0}));
  EXPECT_EQ(g.MapPoint({1280, 720}), (PixelPoint{895, 447}));
  EXPECT_EQ(g.MapPoint({640, 360}), (PixelPoint{448, 224}));
  const PixelBox full = g.MapBox(PixelBox::FromEdges(0, 0, 1280, 720));
  EXPECT_TRUE(BoxInside(full, 896, 448));
  EXPECT_THROW(ResizedGeometry(0, 10, BlockGrid{1, 1}), PreconditionError);
}

TEST(DisambiguateTest, AddsNearestContext) {
  const DomTree tree(Node("div", PixelBox{}, {},
                          {Node("section", PixelBox{}, "Shoes", {Node("a", PixelBox{}, "More")}),
                           Node("section", PixelBox{}, "Hats", {Node("a", PixelBox{}, "More")}),
                           Node("p", PixelBox{}, "Unique")}));
  std::vector<GroundingPair> pairs = {
      {"More", PixelBox{}, std::nullopt, GroundingKind::kText, NodeId{2}},
      {"More", PixelBox{}, std::nullopt, GroundingKind::kText, NodeId{4}},
      {"Unique", PixelBox{}, std::nullopt, GroundingKind::kText, NodeId{5}},
  };
  const auto out = Disambiguate(pairs, tree);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].text, "More (near: Shoes)");
  EXPECT_EQ(out[1].text, "More (near: Hats)");
  EXPECT_EQ(out[2].text, "Unique");
}

TEST(DisambiguateTest, DropsPairsWithoutContext) {
  const DomTree tree(Node("div", PixelBox{}, {},
                          {Node("a", PixelBox{}, "Go"), Node("a", PixelBox{}, "Go")}));
  Diagnostics diags;
  const auto out = Disambiguate(
      {{"Go", PixelBox{}, std::nullopt, GroundingKind::kText, NodeId{1}},
       {"Go", PixelBox{}, std::nullopt, GroundingKind::kText, NodeId{2}}},
      tree, &diags);
  // The first has nothing before it; the second gets the first "Go", which
  // equals its own text and is skipped.
  EXPECT_TRUE(out.empty());
  ASSERT_EQ(diags.size(), 2u);
  EXPECT_EQ(diags[0].code, "no_context");
}

TEST(PackGreedyTest, Examples) {
  const std::vector<int64_t> costs = {3, 3, 3, 9, 1};
  const PackPlan plan = PackGreedy(costs, 2, 8);
  EXPECT_EQ(plan.groups, (std::vector<std::vector<size_t>>{{0, 1}, {2, 4}}));
  EXPECT_EQ(plan.dropped, (std::vector<size_t>{3}));
  EXPECT_THROW(PackGreedy(costs, 9, 8), PreconditionError);
}

TEST(PackGreedyTest, PropertiesOnRandomLists) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int64_t budget = std::uniform_int_distribution<int64_t>(10, 200)(rng);
    const int64_t overhead = std::uniform_int_distribution<int64_t>(0, 9)(rng);
    std::vector<int64_t> costs(std::uniform_int_distribution<size_t>(0, 60)(rng));
    for (auto& c : costs) c = std::uniform_int_distribution<int64_t>(1, 250)(rng);
    const PackPlan plan = PackGreedy(costs, overhead, budget);

    std::vector<size_t> order;
    for (const auto& g : plan.groups) {
      ASSERT_FALSE(g.empty());
      int64_t used = overhead;
      for (size_t i : g) used += costs[i];
      ASSERT_LE(used, budget);
      order.insert(order.end(), g.begin(), g.end());
    }
    for (size_t i : plan.dropped) ASSERT_GT(overhead + costs[i], budget);
    order.insert(order.end(), plan.dropped.begin(), plan.dropped.end());
    std::sort(order.begin(), order.end());
    std::vector<size_t> all(costs.size());
    std::iota(all.begin(), all.end(), 0);
    ASSERT_EQ(order, all);
    // The next group's first item would not have fit in the previous group.
    for (size_t k = 1; k < plan.groups.size(); ++k) {
      int64_t used = overhead;
      for (size_t i : plan.groups[k - 1]) used += costs[i];
      ASSERT_GT(used + costs[plan.groups[k].front()], budget);
    }
  }
}

TEST(PackPairsTest, NumberedListFormat) {
  const ResizedGeometry geometry(448, 448, BlockGrid{1, 1});
  const std::vector<GroundingPair> pairs = {
      {"Home", PixelBox::FromEdges(0, 0, 448, 448), std::nullopt, GroundingKind::kText, {}},
      {"Cart", PixelBox{100, 50, 20, 10}, std::nullopt, GroundingKind::kText, {}},
  };
  const auto samples = PackPairs(pairs, Task::kText2Bbox, "s", geometry, GenContext{});
  ASSERT_EQ(samples.size(), 1u);
  const TrainingSample& s = samples[0];
  EXPECT_EQ(s.target, "1.[0, 500, 500, 999, 999]\n2.[0, 223, 111, 45, 22]");
  EXPECT_TRUE(s.prompt.starts_with("<image>\n1.Home\n2.Cart\n"));
  EXPECT_EQ(s.est_tokens, EstimateTokens(s.prompt) + EstimateTokens(s.target));

  const auto reversed = PackPairs(pairs, Task::kBbox2Text, "s", geometry, GenContext{});
  EXPECT_EQ(reversed[0].target, "1.Home\n2.Cart");
  EXPECT_THROW(PackPairs(pairs, Task::kBbox2Dom, "s", geometry, GenContext{}),
               PreconditionError);
}

TEST(GeneratorsTest, FixtureSamplesRespectBudgetAndFormat) {
  for (const auto& file : ListSnapshotFiles(testing::FixtureDir() / "snapshots")) {
    const Snapshot snap = LoadSnapshotFile(file);
    const MarkSet marks = MarkElements(snap);
    const BlockGrid grid = SelectGrid(snap.viewport_w, snap.viewport_h, kDefaultMaxBlocks);
    GenContext ctx;
    ctx.budget = 512;
    std::vector<TrainingSample> all = GenText2Bbox(snap, marks, grid, ctx);
    const auto more = GenBbox2Text(snap, marks, grid, ctx);
    all.insert(all.end(), more.begin(), more.end());
    all.push_back(GenBbox2Dom(snap, marks, grid, ctx));
    for (const TrainingSample& s : all) {
      EXPECT_TRUE(s.prompt.starts_with("<image>\n")) << snap.id;
      EXPECT_LE(s.est_tokens, ctx.budget) << snap.id;
      EXPECT_EQ(s.grid, grid);
      EXPECT_EQ(SampleFromJson(nlohmann::json::parse(SampleToJson(s).dump())), s);
    }
    for (const TrainingSample& s : all) {
      if (s.task != Task::kText2Bbox) continue;
      for (const std::string& line : SplitLines(s.target)) {
        const auto values = ParseIntList(line.substr(line.find('.') + 1));
        ASSERT_TRUE(values) << line;
        ASSERT_EQ(values->size(), 5u);
        EXPECT_LT((*values)[0], grid.BlockCount());
        for (size_t k = 1; k < 5; ++k) EXPECT_LE((*values)[k], 999);
      }
    }
  }
}

TEST(GeneratorsTest, Function2BboxSkipsNonClickable) {
  auto button = Node("button", PixelBox::FromEdges(10, 10, 50, 30), "OK");
  Snapshot s = MakeSnapshot(
      Node("div", PixelBox::FromEdges(0, 0, 100, 100), {},
           {button, Node("p", PixelBox::FromEdges(0, 50, 100, 60), "text")}),
      100, 100);
  Diagnostics diags;
  GenContext ctx;
  ctx.diagnostics = &diags;
  const auto samples = GenFunction2Bbox(
      s, {{1, "to confirm"}, {2, "to read"}, {9, "nothing"}}, BlockGrid{1, 1}, ctx);
  ASSERT_EQ(samples.size(), 1u);
  EXPECT_EQ(samples[0].target, "1.[300, 200, 400, 200]");
  ASSERT_EQ(diags.size(), 2u);
  EXPECT_EQ(diags[0].code, "not_clickable");
  EXPECT_EQ(diags[1].code, "unknown_node");
}

TEST(RegionNameTest, ThirdsWithLowerCellBoundaries) {
  EXPECT_EQ(RegionName(PixelBox{10, 10, 2, 2}, 300, 300), "top-left corner");
  EXPECT_EQ(RegionName(PixelBox{100, 10, 2, 2}, 300, 300), "top-left corner");
  EXPECT_EQ(RegionName(PixelBox{101, 10, 2, 2}, 300, 300), "top");
  EXPECT_EQ(RegionName(PixelBox{150, 150, 2, 2}, 300, 300), "center");
  EXPECT_EQ(RegionName(PixelBox{290, 290, 2, 2}, 300, 300), "bottom-right corner");
  EXPECT_EQ(RegionName(PixelBox{10, 150, 2, 2}, 300, 300), "left");
}

TEST(AnnotationColorTest, PicksMostDistantCandidate) {
  const std::vector<Rgb> reddish(5, Rgb{250, 10, 10});
  EXPECT_EQ(SelectAnnotationColor(reddish), AnnotationColor::kGreen);
  const std::vector<Rgb> greenish(5, Rgb{0, 255, 0});
  EXPECT_EQ(SelectAnnotationColor(greenish), AnnotationColor::kRed);
  const std::vector<Rgb> gray(3, Rgb{128, 128, 128});
  EXPECT_EQ(SelectAnnotationColor(gray), AnnotationColor::kRed);  // three-way tie
  EXPECT_THROW(SelectAnnotationColor({}), PreconditionError);
  EXPECT_EQ(AnnotationColorName(AnnotationColor::kBlue), "blue");
}

TEST(SurroundRingTest, RingGeometry) {
  const PixelBox box = PixelBox::FromEdges(20, 20, 30, 30);
  const auto ring = SurroundRing(box, 100, 100);
  // 22x22 outer square minus 18x18 inner, every fourth pixel.
  EXPECT_EQ(ring.size(), (22u * 22u - 18u * 18u + 3u) / 4u);
  for (const PixelPoint& p : ring) {
    const bool in_gap = p.x >= 16 && p.x < 34 && p.y >= 16 && p.y < 34;
    EXPECT_FALSE(in_gap);
    EXPECT_TRUE(p.x >= 14 && p.x < 36 && p.y >= 14 && p.y < 36);
  }
  EXPECT_EQ(ring.front(), (PixelPoint{14, 14}));
  EXPECT_TRUE(SurroundRing(PixelBox::FromEdges(0, 0, 100, 100), 100, 100).empty());
}

}  // namespace
}  // namespace guikit
