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

#ifndef GUIKIT_SAMPLEGEN_H_
#define GUIKIT_SAMPLEGEN_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "guikit/diagnostics.h"
#include "guikit/geometry.h"
#include "guikit/prompts.h"
#include "guikit/snapshot.h"

namespace guikit {

enum class Task { kText2Bbox, kBbox2Text, kBbox2Dom, kFunction2Bbox, kNavigation };

std::string TaskName(Task task);
std::optional<Task> ParseTask(std::string_view name);

inline constexpr int64_t kDefaultTokenBudget = 4096;

struct TrainingSample {
  Task task = Task::kText2Bbox;
  std::string prompt;
  std::string target;
  std::string snapshot_id;
  BlockGrid grid;
  int64_t est_tokens = 0;

  friend bool operator==(const TrainingSample&, const TrainingSample&) = default;
};

// JSONL record: {task, prompt, target, snapshot_id, grid: [n_w, n_h],
// est_tokens}. Block extents are not serialized; FromJson takes them.
nlohmann::ordered_json SampleToJson(const TrainingSample& sample);
TrainingSample SampleFromJson(const nlohmann::json& doc,
                              int64_t w_block = kDefaultBlockExtent,
                              int64_t h_block = kDefaultBlockExtent);

// Maps viewport pixels onto the resized image a grid tiles.
class ResizedGeometry {
 public:
  ResizedGeometry(int64_t viewport_w, int64_t viewport_h, BlockGrid grid);

  const BlockGrid& grid() const { return grid_; }
  int64_t viewport_w() const { return viewport_w_; }
  int64_t viewport_h() const { return viewport_h_; }

  // Rounded and clamped into [0, width) x [0, height) of the grid image.
  PixelPoint MapPoint(const PixelPoint& p) const;
  // Center mapped like MapPoint, extents scaled and shrunk so the box stays
  // inside the grid image.
  PixelBox MapBox(const PixelBox& box) const;

  // Exact (unrounded) image of a viewport coordinate.
  double ScaleX(double x) const;
  double ScaleY(double y) const;

 private:
  int64_t viewport_w_;
  int64_t viewport_h_;
  BlockGrid grid_;
};

enum class GroundingKind { kText, kIcon, kFunction };

// One (text, box) grounding pair. `box` is in viewport pixels; `block_local`
// is the block-local form of the mapped box center for text and icon pairs.
struct GroundingPair {
  std::string text;
  PixelBox box;
  std::optional<BlockLocalPoint> block_local;
  GroundingKind kind = GroundingKind::kText;
  // Node this pair anchors to, within the tree passed to Disambiguate. For
  // icons it is the deepest node covering the icon center.
  std::optional<NodeId> node;
};

// "[b_i, cx', cy', w, h]" with the center in block-local form normalized
// within the block, or "[cx, cy, w, h]" normalized within the whole image.
// `box` is in grid-image pixels. Throws DomainError when it does not fit.
std::string SerializeBbox(const PixelBox& box, const BlockGrid& grid,
                          bool with_block_index);

// "[cx, cy, w, h]" normalized within an image of the given extents.
std::string SerializeNormalizedBox(const PixelBox& box, int64_t image_w,
                                   int64_t image_h);

// Integers of a serialized "[a, b, ...]" list; nullopt when malformed.
std::optional<std::vector<int64_t>> ParseIntList(std::string_view text);

// Rewrites texts that occur more than once as "{text} (near: {context})".
// Context is the text of the nearest ancestor carrying text, else of the
// nearest preceding sibling (walking up through ancestors' siblings). Pairs
// with no context, or still colliding afterwards, are dropped with a
// diagnostic.
std::vector<GroundingPair> Disambiguate(std::vector<GroundingPair> pairs,
                                        const DomTree& tree,
                                        Diagnostics* diagnostics = nullptr);

// Greedy first-fit packing in input order. `cost(item, position)` is the
// token cost of placing `item` as the position-th (0-based) entry of a sample;
// `overhead` is the cost of an empty sample. Items that cannot fit even alone
// are dropped.
struct PackPlan {
  std::vector<std::vector<size_t>> groups;
  std::vector<size_t> dropped;
};

PackPlan PackGreedy(size_t item_count,
                    const std::function<int64_t(size_t, size_t)>& cost,
                    int64_t overhead, int64_t budget);
PackPlan PackGreedy(std::span<const int64_t> costs, int64_t overhead,
                    int64_t budget);

// Everything a generator needs besides its inputs.
struct GenContext {
  const PromptPool* pool = &PromptPool::Default();
  int64_t budget = kDefaultTokenBudget;
  std::mt19937_64* rng = nullptr;  // null: always the first template
  Diagnostics* diagnostics = nullptr;
};

// Packs pairs into numbered list samples for text2bbox, bbox2text or
// function2bbox. Boxes of text2bbox/bbox2text carry a block index; function
// boxes are global.
std::vector<TrainingSample> PackPairs(const std::vector<GroundingPair>& pairs,
                                      Task task, const std::string& snapshot_id,
                                      const ResizedGeometry& geometry,
                                      const GenContext& ctx);

// Text pairs from marked nodes with text, then icon pairs, in document order.
// `pruned` must be PruneDom(snapshot, marks); pair nodes index into it.
std::vector<GroundingPair> CollectGroundingPairs(const Snapshot& snapshot,
                                                 const MarkSet& marks,
                                                 const PrunedDom& pruned,
                                                 const ResizedGeometry& geometry);

std::vector<TrainingSample> GenText2Bbox(const Snapshot& snapshot,
                                         const MarkSet& marks,
                                         const BlockGrid& grid,
                                         const GenContext& ctx);
std::vector<TrainingSample> GenBbox2Text(const Snapshot& snapshot,
                                         const MarkSet& marks,
                                         const BlockGrid& grid,
                                         const GenContext& ctx);

// Throws BudgetError when no region fits.
TrainingSample GenBbox2Dom(const Snapshot& snapshot, const MarkSet& marks,
                           const BlockGrid& grid, const GenContext& ctx);

struct FunctionLabel {
  NodeId node;
  std::string function;
};

// Non-clickable references are skipped with a diagnostic.
std::vector<TrainingSample> GenFunction2Bbox(
    const Snapshot& snapshot, const std::vector<FunctionLabel>& functions,
    const BlockGrid& grid, const GenContext& ctx);

// Box-level variant for screens without a DOM (mobile step descriptions).
std::vector<TrainingSample> GenFunction2BboxFromBoxes(
    const std::string& screen_id, int64_t screen_w, int64_t screen_h,
    const std::vector<std::pair<PixelBox, std::string>>& functions,
    const BlockGrid& grid, const GenContext& ctx);

// Coarse 3x3 location of a box center: "top-left corner", "top", ...,
// "bottom-right corner". Boundaries belong to the lower-index cell.
std::string RegionName(const PixelBox& box, int64_t viewport_w,
                       int64_t viewport_h);

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

enum class AnnotationColor { kRed, kGreen, kBlue };

std::string AnnotationColorName(AnnotationColor color);

// Candidate with the largest mean RGB distance to the surround; red, green,
// blue order decides ties. Throws PreconditionError on an empty surround.
AnnotationColor SelectAnnotationColor(std::span<const Rgb> surround);

// Ring two pixels thick, starting four pixels outside the box, clipped to the
// image and subsampled to every 4th pixel in raster order.
std::vector<PixelPoint> SurroundRing(const PixelBox& box, int64_t image_w,
                                     int64_t image_h);

}  // namespace guikit

#endif  // GUIKIT_SAMPLEGEN_H_
