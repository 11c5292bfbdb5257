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

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "guikit/errors.h"
#include "guikit/text.h"

namespace guikit {

namespace {

constexpr std::string_view kImageToken = "<image>";

int64_t RoundHalfUp(int64_t num, int64_t den) { return (2 * num + den) / (2 * den); }

}  // namespace

std::string TaskName(Task task) {
  switch (task) {
    case Task::kText2Bbox:
      return "text2bbox";
    case Task::kBbox2Text:
      return "bbox2text";
    case Task::kBbox2Dom:
      return "bbox2dom";
    case Task::kFunction2Bbox:
      return "function2bbox";
    case Task::kNavigation:
      return "navigation";
  }
  return "text2bbox";
}

std::optional<Task> ParseTask(std::string_view name) {
  for (Task t : {Task::kText2Bbox, Task::kBbox2Text, Task::kBbox2Dom,
                 Task::kFunction2Bbox, Task::kNavigation}) {
    if (TaskName(t) == name) return t;
  }
  return std::nullopt;
}

nlohmann::ordered_json SampleToJson(const TrainingSample& s) {
  nlohmann::ordered_json out;
  out["task"] = TaskName(s.task);
  out["prompt"] = s.prompt;
  out["target"] = s.target;
  out["snapshot_id"] = s.snapshot_id;
  out["grid"] = {s.grid.n_w, s.grid.n_h};
  out["est_tokens"] = s.est_tokens;
  return out;
}

TrainingSample SampleFromJson(const nlohmann::json& doc, int64_t w_block,
                              int64_t h_block) {
  TrainingSample s;
  const auto task = ParseTask(doc.at("task").get<std::string>());
  if (!task) throw SchemaError("", "unknown task " + doc.at("task").dump());
  s.task = *task;
  s.prompt = doc.at("prompt").get<std::string>();
  s.target = doc.at("target").get<std::string>();
  s.snapshot_id = doc.at("snapshot_id").get<std::string>();
  const auto& grid = doc.at("grid");
  if (!grid.is_array() || grid.size() != 2) {
    throw SchemaError("", "grid must be [n_w, n_h]");
  }
  s.grid = BlockGrid{grid[0].get<int64_t>(), grid[1].get<int64_t>(), w_block,
                     h_block};
  s.est_tokens = doc.at("est_tokens").get<int64_t>();
  return s;
}

ResizedGeometry::ResizedGeometry(int64_t viewport_w, int64_t viewport_h,
                                 BlockGrid grid)
    : viewport_w_(viewport_w), viewport_h_(viewport_h), grid_(grid) {
  if (viewport_w < 1 || viewport_h < 1) {
    throw PreconditionError("viewport extents must be positive");
  }
}

double ResizedGeometry::ScaleX(double x) const {
  return x * static_cast<double>(grid_.Width()) / static_cast<double>(viewport_w_);
}

double ResizedGeometry::ScaleY(double y) const {
  return y * static_cast<double>(grid_.Height()) / static_cast<double>(viewport_h_);
}

PixelPoint ResizedGeometry::MapPoint(const PixelPoint& p) const {
  const int64_t W = grid_.Width();
  const int64_t H = grid_.Height();
  const int64_t x = std::clamp<int64_t>(p.x, 0, viewport_w_);
  const int64_t y = std::clamp<int64_t>(p.y, 0, viewport_h_);
  return PixelPoint{std::min(RoundHalfUp(x * W, viewport_w_), W - 1),
                    std::min(RoundHalfUp(y * H, viewport_h_), H - 1)};
}

PixelBox ResizedGeometry::MapBox(const PixelBox& box) const {
  const int64_t W = grid_.Width();
  const int64_t H = grid_.Height();
  const PixelPoint c = MapPoint({box.cx, box.cy});
  int64_t w = std::max<int64_t>(1, RoundHalfUp(std::max<int64_t>(box.w, 0) * W, viewport_w_));
  int64_t h = std::max<int64_t>(1, RoundHalfUp(std::max<int64_t>(box.h, 0) * H, viewport_h_));
  w = std::min({w, 2 * c.x + 1, 2 * (W - c.x)});
  h = std::min({h, 2 * c.y + 1, 2 * (H - c.y)});
  return PixelBox{c.x, c.y, w, h};
}

std::string SerializeNormalizedBox(const PixelBox& box, int64_t image_w,
                                   int64_t image_h) {
  if (!BoxInside(box, image_w, image_h)) {
    throw DomainError("box outside the " + std::to_string(image_w) + "x" +
                      std::to_string(image_h) + " image");
  }
  return "[" + std::to_string(NormalizeCoord(box.cx, image_w)) + ", " +
         std::to_string(NormalizeCoord(box.cy, image_h)) + ", " +
         std::to_string(NormalizeCoord(box.w, image_w)) + ", " +
         std::to_string(NormalizeCoord(box.h, image_h)) + "]";
}

std::string SerializeBbox(const PixelBox& box, const BlockGrid& grid,
                          bool with_block_index) {
  const int64_t W = grid.Width();
  const int64_t H = grid.Height();
  if (!with_block_index) return SerializeNormalizedBox(box, W, H);
  if (!BoxInside(box, W, H)) {
    throw DomainError("box outside the " + grid.ToString() + " grid image");
  }
  const BlockLocalPoint local = ToBlockLocal({box.cx, box.cy}, grid);
  return "[" + std::to_string(local.block_index) + ", " +
         std::to_string(NormalizeCoord(local.x, grid.w_block)) + ", " +
         std::to_string(NormalizeCoord(local.y, grid.h_block)) + ", " +
         std::to_string(NormalizeCoord(box.w, W)) + ", " +
         std::to_string(NormalizeCoord(box.h, H)) + "]";
}

std::optional<std::vector<int64_t>> ParseIntList(std::string_view text) {
  const std::string s = Trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
  std::vector<int64_t> values;
  const std::string body = s.substr(1, s.size() - 2);
  if (Trim(body).empty()) return values;
  size_t start = 0;
  while (start <= body.size()) {
    size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    const std::string item = Trim(std::string_view(body).substr(start, comma - start));
    int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      return std::nullopt;
    }
    values.push_back(v);
    start = comma + 1;
  }
  return values;
}

namespace {

std::string OwnText(const DomTree& tree, NodeId id) {
  const auto& text = tree[id].element.text;
  return text ? CollapseWhitespace(*text) : std::string();
}

std::optional<std::string> ContextFor(const DomTree& tree, NodeId node,
                                      bool include_self,
                                      const std::string& original) {
  auto usable = [&](NodeId id) {
    const std::string t = OwnText(tree, id);
    return !t.empty() && t != original ? std::optional<std::string>(t)
                                       : std::nullopt;
  };
  std::optional<NodeId> cur = include_self ? std::optional<NodeId>(node)
                                           : tree[node].parent;
  for (; cur; cur = tree[*cur].parent) {
    if (auto t = usable(*cur)) return t;
  }
  for (std::optional<NodeId> x = node; x; x = tree[*x].parent) {
    const auto parent = tree[*x].parent;
    if (!parent) break;
    const auto& siblings = tree[*parent].children;
    auto it = std::find(siblings.begin(), siblings.end(), *x);
    while (it != siblings.begin()) {
      --it;
      if (auto t = usable(*it)) return t;
    }
  }
  return std::nullopt;
}

void Report(Diagnostics* diagnostics, std::string code, std::string subject,
            std::string message) {
  if (diagnostics) {
    diagnostics->push_back(
        Diagnostic{std::move(code), std::move(subject), std::move(message)});
  }
}

}  // namespace

std::vector<GroundingPair> Disambiguate(std::vector<GroundingPair> pairs,
                                        const DomTree& tree,
                                        Diagnostics* diagnostics) {
  std::map<std::string, int> counts;
  for (const auto& p : pairs) ++counts[p.text];

  std::vector<GroundingPair> rewritten;
  rewritten.reserve(pairs.size());
  for (auto& p : pairs) {
    if (counts[p.text] > 1) {
      std::optional<std::string> context;
      if (p.node && *p.node < tree.size()) {
        context = ContextFor(tree, *p.node, p.kind == GroundingKind::kIcon, p.text);
      }
      if (!context) {
        Report(diagnostics, "no_context", p.text,
               "duplicate text without context dropped");
        continue;
      }
      p.text += " (near: " + *context + ")";
    }
    rewritten.push_back(std::move(p));
  }

  std::set<std::string> seen;
  std::vector<GroundingPair> out;
  out.reserve(rewritten.size());
  for (auto& p : rewritten) {
    if (!seen.insert(p.text).second) {
      Report(diagnostics, "ambiguous_after_context", p.text,
             "text still duplicated after adding context; dropped");
      continue;
    }
    out.push_back(std::move(p));
  }
  return out;
}

PackPlan PackGreedy(size_t item_count,
                    const std::function<int64_t(size_t, size_t)>& cost,
                    int64_t overhead, int64_t budget) {
  if (budget < overhead) {
    throw PreconditionError("budget " + std::to_string(budget) +
                            " is below the empty-sample overhead " +
                            std::to_string(overhead));
  }
  PackPlan plan;
  std::vector<size_t> current;
  int64_t used = overhead;
  for (size_t i = 0; i < item_count; ++i) {
    // An item too large for an empty sample leaves the open group untouched.
    if (overhead + cost(i, 0) > budget) {
      plan.dropped.push_back(i);
      continue;
    }
    if (!current.empty()) {
      const int64_t c = cost(i, current.size());
      if (used + c <= budget) {
        current.push_back(i);
        used += c;
        continue;
      }
      plan.groups.push_back(std::move(current));
      current.clear();
    }
    current.push_back(i);
    used = overhead + cost(i, 0);
  }
  if (!current.empty()) plan.groups.push_back(std::move(current));
  return plan;
}

PackPlan PackGreedy(std::span<const int64_t> costs, int64_t overhead,
                    int64_t budget) {
  return PackGreedy(
      costs.size(), [&](size_t i, size_t) { return costs[i]; }, overhead,
      budget);
}

namespace {

std::string PromptKey(Task task) { return TaskName(task); }

const std::string& ChooseTemplate(const GenContext& ctx, const std::string& key) {
  return ctx.rng ? ctx.pool->Pick(key, *ctx.rng) : ctx.pool->First(key);
}

int64_t MaxTemplateTokens(const PromptPool& pool, const std::string& key,
                          const std::vector<std::pair<std::string, std::string>>& values) {
  int64_t worst = 0;
  for (const std::string& t : pool.Templates(key)) {
    worst = std::max(worst, EstimateTokens(Substitute(t, values)));
  }
  return worst;
}

}  // namespace

std::vector<TrainingSample> PackPairs(const std::vector<GroundingPair>& pairs,
                                      Task task, const std::string& snapshot_id,
                                      const ResizedGeometry& geometry,
                                      const GenContext& ctx) {
  if (task != Task::kText2Bbox && task != Task::kBbox2Text &&
      task != Task::kFunction2Bbox) {
    throw PreconditionError("PackPairs does not handle task " + TaskName(task));
  }
  const BlockGrid& grid = geometry.grid();

  // Serialized boxes are computed once; list lines differ only in the prefix.
  std::vector<std::string> boxes;
  boxes.reserve(pairs.size());
  for (const GroundingPair& p : pairs) {
    if (task == Task::kFunction2Bbox) {
      boxes.push_back(SerializeNormalizedBox(
          ClipBox(p.box, geometry.viewport_w(), geometry.viewport_h()),
          geometry.viewport_w(), geometry.viewport_h()));
    } else {
      boxes.push_back(SerializeBbox(geometry.MapBox(p.box), grid, true));
    }
  }
  auto prompt_item = [&](size_t i) -> const std::string& {
    return task == Task::kBbox2Text ? boxes[i] : pairs[i].text;
  };
  auto target_item = [&](size_t i) -> const std::string& {
    return task == Task::kBbox2Text ? pairs[i].text : boxes[i];
  };
  auto numbered = [](size_t position, const std::string& item) {
    return std::to_string(position + 1) + "." + item;
  };

  const std::string key = PromptKey(task);
  const int64_t overhead =
      EstimateTokens(kImageToken) + MaxTemplateTokens(*ctx.pool, key, {});
  const PackPlan plan = PackGreedy(
      pairs.size(),
      [&](size_t i, size_t position) {
        return EstimateTokens(numbered(position, prompt_item(i))) +
               EstimateTokens(numbered(position, target_item(i)));
      },
      overhead, ctx.budget);

  for (size_t i : plan.dropped) {
    Report(ctx.diagnostics, "pair_exceeds_budget", pairs[i].text,
           "pair alone exceeds the token budget of " +
               std::to_string(ctx.budget));
  }

  std::vector<TrainingSample> samples;
  for (const auto& group : plan.groups) {
    std::vector<std::string> prompt_lines{std::string(kImageToken)};
    std::vector<std::string> target_lines;
    for (size_t position = 0; position < group.size(); ++position) {
      prompt_lines.push_back(numbered(position, prompt_item(group[position])));
      target_lines.push_back(numbered(position, target_item(group[position])));
    }
    prompt_lines.push_back(ChooseTemplate(ctx, key));
    TrainingSample s;
    s.task = task;
    s.prompt = Join(prompt_lines, "\n");
    s.target = Join(target_lines, "\n");
    s.snapshot_id = snapshot_id;
    s.grid = grid;
    s.est_tokens = EstimateTokens(s.prompt) + EstimateTokens(s.target);
    samples.push_back(std::move(s));
  }
  return samples;
}

std::vector<GroundingPair> CollectGroundingPairs(const Snapshot& snapshot,
                                                 const MarkSet& marks,
                                                 const PrunedDom& pruned,
                                                 const ResizedGeometry& geometry) {
  std::vector<GroundingPair> pairs;
  if (pruned.source_ids.empty()) return pairs;
  const DomTree tree(pruned.root);
  const BlockGrid& grid = geometry.grid();
  for (NodeId id = 0; id < tree.size(); ++id) {
    if (!marks.Contains(pruned.source_ids[id])) continue;
    const std::string text = OwnText(tree, id);
    if (text.empty()) continue;
    const PixelBox box =
        ClipBox(tree[id].element.bbox, snapshot.viewport_w, snapshot.viewport_h);
    if (box.w < 1 || box.h < 1) continue;
    const PixelBox mapped = geometry.MapBox(box);
    pairs.push_back(GroundingPair{text, box,
                                  ToBlockLocal({mapped.cx, mapped.cy}, grid),
                                  GroundingKind::kText, id});
  }
  for (const IconCaption& icon : snapshot.icons) {
    const std::string caption = CollapseWhitespace(icon.caption);
    const PixelBox box = ClipBox(icon.bbox, snapshot.viewport_w, snapshot.viewport_h);
    if (caption.empty() || box.w < kMinMarkExtent || box.h < kMinMarkExtent) {
      continue;
    }
    std::optional<NodeId> container;
    int depth = -1;
    for (NodeId id = 0; id < tree.size(); ++id) {
      if (tree[id].element.bbox.CoversPixel({box.cx, box.cy}) &&
          tree[id].depth >= depth) {
        container = id;
        depth = tree[id].depth;
      }
    }
    const PixelBox mapped = geometry.MapBox(box);
    pairs.push_back(GroundingPair{caption, box,
                                  ToBlockLocal({mapped.cx, mapped.cy}, grid),
                                  GroundingKind::kIcon, container});
  }
  return pairs;
}

namespace {

std::vector<TrainingSample> GenGrounding(Task task, const Snapshot& snapshot,
                                         const MarkSet& marks,
                                         const BlockGrid& grid,
                                         const GenContext& ctx) {
  const ResizedGeometry geometry(snapshot.viewport_w, snapshot.viewport_h, grid);
  const PrunedDom pruned = PruneDom(snapshot, marks);
  auto pairs = CollectGroundingPairs(snapshot, marks, pruned, geometry);
  if (pairs.empty()) return {};
  const DomTree tree(pruned.root);
  pairs = Disambiguate(std::move(pairs), tree, ctx.diagnostics);
  return PackPairs(pairs, task, snapshot.id, geometry, ctx);
}

}  // namespace

std::vector<TrainingSample> GenText2Bbox(const Snapshot& snapshot,
                                         const MarkSet& marks,
                                         const BlockGrid& grid,
                                         const GenContext& ctx) {
  return GenGrounding(Task::kText2Bbox, snapshot, marks, grid, ctx);
}

std::vector<TrainingSample> GenBbox2Text(const Snapshot& snapshot,
                                         const MarkSet& marks,
                                         const BlockGrid& grid,
                                         const GenContext& ctx) {
  return GenGrounding(Task::kBbox2Text, snapshot, marks, grid, ctx);
}

TrainingSample GenBbox2Dom(const Snapshot& snapshot, const MarkSet& marks,
                           const BlockGrid& grid, const GenContext& ctx) {
  const std::string key = PromptKey(Task::kBbox2Dom);
  // Reserve room for the prompt with the widest possible box.
  const int64_t prompt_cost =
      EstimateTokens(kImageToken) +
      MaxTemplateTokens(*ctx.pool, key, {{"bbox", "[999, 999, 999, 999]"}});
  const int64_t region_budget = ctx.budget - prompt_cost;
  if (region_budget < 1) throw BudgetError("region budget too small");
  const DomRegion region = SelectDomRegion(snapshot, marks, region_budget);

  const PixelBox box =
      ClipBox(region.box, snapshot.viewport_w, snapshot.viewport_h);
  const std::string box_text =
      box.w >= 1 && box.h >= 1
          ? SerializeNormalizedBox(box, snapshot.viewport_w, snapshot.viewport_h)
          : SerializeNormalizedBox(
                PixelBox::FromEdges(0, 0, snapshot.viewport_w, snapshot.viewport_h),
                snapshot.viewport_w, snapshot.viewport_h);

  TrainingSample s;
  s.task = Task::kBbox2Dom;
  s.prompt = std::string(kImageToken) + "\n" +
             Substitute(ChooseTemplate(ctx, key), {{"bbox", box_text}});
  s.target = SerializeDom(DomTree(region.subtree));
  s.snapshot_id = snapshot.id;
  s.grid = grid;
  s.est_tokens = EstimateTokens(s.prompt) + EstimateTokens(s.target);
  return s;
}

std::vector<TrainingSample> GenFunction2Bbox(
    const Snapshot& snapshot, const std::vector<FunctionLabel>& functions,
    const BlockGrid& grid, const GenContext& ctx) {
  const ResizedGeometry geometry(snapshot.viewport_w, snapshot.viewport_h, grid);
  std::vector<GroundingPair> pairs;
  for (const FunctionLabel& label : functions) {
    if (label.node >= snapshot.dom.size()) {
      Report(ctx.diagnostics, "unknown_node", std::to_string(label.node),
             "function references a node outside the snapshot");
      continue;
    }
    const DomElement& element = snapshot.dom[label.node].element;
    if (!IsClickable(element)) {
      Report(ctx.diagnostics, "not_clickable", std::to_string(label.node),
             "function references non-clickable <" + element.tag + ">");
      continue;
    }
    const PixelBox box =
        ClipBox(element.bbox, snapshot.viewport_w, snapshot.viewport_h);
    const std::string text = CollapseWhitespace(label.function);
    if (box.w < 1 || box.h < 1 || text.empty()) {
      Report(ctx.diagnostics, "empty_function_pair", std::to_string(label.node),
             "element off-screen or function text empty");
      continue;
    }
    pairs.push_back(GroundingPair{text, box, std::nullopt,
                                  GroundingKind::kFunction, label.node});
  }
  if (pairs.empty()) return {};
  return PackPairs(pairs, Task::kFunction2Bbox, snapshot.id, geometry, ctx);
}

std::vector<TrainingSample> GenFunction2BboxFromBoxes(
    const std::string& screen_id, int64_t screen_w, int64_t screen_h,
    const std::vector<std::pair<PixelBox, std::string>>& functions,
    const BlockGrid& grid, const GenContext& ctx) {
  const ResizedGeometry geometry(screen_w, screen_h, grid);
  std::vector<GroundingPair> pairs;
  for (const auto& [raw_box, function] : functions) {
    const PixelBox box = ClipBox(raw_box, screen_w, screen_h);
    const std::string text = CollapseWhitespace(function);
    if (box.w < 1 || box.h < 1 || text.empty()) {
      Report(ctx.diagnostics, "empty_function_pair", screen_id,
             "box off-screen or function text empty");
      continue;
    }
    pairs.push_back(
        GroundingPair{text, box, std::nullopt, GroundingKind::kFunction, std::nullopt});
  }
  if (pairs.empty()) return {};
  return PackPairs(pairs, Task::kFunction2Bbox, screen_id, geometry, ctx);
}

std::string RegionName(const PixelBox& box, int64_t viewport_w,
                       int64_t viewport_h) {
  static constexpr std::array<std::array<const char*, 3>, 3> kNames = {{
      {"top-left corner", "top", "top-right corner"},
      {"left", "center", "right"},
      {"bottom-left corner", "bottom", "bottom-right corner"},
  }};
  auto third = [](int64_t v, int64_t extent) {
    if (3 * v <= extent) return 0;
    if (3 * v <= 2 * extent) return 1;
    return 2;
  };
  return kNames[third(box.cy, viewport_h)][third(box.cx, viewport_w)];
}

std::string AnnotationColorName(AnnotationColor color) {
  switch (color) {
    case AnnotationColor::kRed:
      return "red";
    case AnnotationColor::kGreen:
      return "green";
    case AnnotationColor::kBlue:
      return "blue";
  }
  return "red";
}

AnnotationColor SelectAnnotationColor(std::span<const Rgb> surround) {
  if (surround.empty()) {
    throw PreconditionError("annotation color needs at least one surround pixel");
  }
  static constexpr std::array<std::pair<AnnotationColor, Rgb>, 3> kCandidates = {{
      {AnnotationColor::kRed, Rgb{255, 0, 0}},
      {AnnotationColor::kGreen, Rgb{0, 255, 0}},
      {AnnotationColor::kBlue, Rgb{0, 0, 255}},
  }};
  AnnotationColor best = AnnotationColor::kRed;
  double best_score = -1.0;
  for (const auto& [color, rgb] : kCandidates) {
    double sum = 0.0;
    for (const Rgb& px : surround) {
      const double dr = static_cast<double>(px.r) - rgb.r;
      const double dg = static_cast<double>(px.g) - rgb.g;
      const double db = static_cast<double>(px.b) - rgb.b;
      sum += std::sqrt(dr * dr + dg * dg + db * db);
    }
    const double score = sum / static_cast<double>(surround.size());
    if (score > best_score) {
      best = color;
      best_score = score;
    }
  }
  return best;
}

std::vector<PixelPoint> SurroundRing(const PixelBox& box, int64_t image_w,
                                     int64_t image_h) {
  constexpr int64_t kGap = 4;
  constexpr int64_t kThickness = 2;
  constexpr int64_t kStride = 4;
  const int64_t x0 = box.PixelLeft(), x1 = box.PixelRight();
  const int64_t y0 = box.PixelTop(), y1 = box.PixelBottom();
  auto inside = [](int64_t x, int64_t y, int64_t l, int64_t t, int64_t r,
                   int64_t b) { return x >= l && x < r && y >= t && y < b; };
  std::vector<PixelPoint> ring;
  size_t index = 0;
  const int64_t outer = kGap + kThickness;
  for (int64_t y = std::max<int64_t>(0, y0 - outer);
       y < std::min(image_h, y1 + outer); ++y) {
    for (int64_t x = std::max<int64_t>(0, x0 - outer);
         x < std::min(image_w, x1 + outer); ++x) {
      if (inside(x, y, x0 - kGap, y0 - kGap, x1 + kGap, y1 + kGap)) continue;
      if (index++ % kStride == 0) ring.push_back({x, y});
    }
  }
  return ring;
}

}  // namespace guikit
