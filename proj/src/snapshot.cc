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

#include "guikit/snapshot.h"

#include <algorithm>
#include <array>

#include "guikit/errors.h"
#include "guikit/text.h"

namespace guikit {

DomTree::DomTree(const DomNode& root) { Flatten(root, std::nullopt, 0); }

void DomTree::Flatten(const DomNode& node, std::optional<NodeId> parent,
                      int depth) {
  const auto id = static_cast<NodeId>(entries_.size());
  entries_.push_back(Entry{node.element, parent, {}, depth, 0});
  if (parent) entries_[*parent].children.push_back(id);
  for (const DomNode& child : node.children) Flatten(child, id, depth + 1);
  entries_[id].subtree_end = static_cast<NodeId>(entries_.size());
}

DomNode DomTree::ToNested(NodeId root) const {
  const Entry& entry = entries_.at(root);
  DomNode node{entry.element, {}};
  node.children.reserve(entry.children.size());
  for (NodeId child : entry.children) node.children.push_back(ToNested(child));
  return node;
}

MarkSet::MarkSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

void MarkSet::Insert(NodeId id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) ids_.insert(it, id);
}

bool MarkSet::Contains(NodeId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::vector<PixelPoint> GridSample(int64_t viewport_w, int64_t viewport_h,
                                   int64_t step) {
  if (step < 1) throw PreconditionError("grid step must be >= 1");
  std::vector<PixelPoint> points;
  if (viewport_w <= 0 || viewport_h <= 0) return points;
  points.reserve(static_cast<size_t>(((viewport_w + step - 1) / step) *
                                     ((viewport_h + step - 1) / step)));
  for (int64_t y = 0; y < viewport_h; y += step) {
    for (int64_t x = 0; x < viewport_w; x += step) points.push_back({x, y});
  }
  return points;
}

bool PassesSizeFilter(const DomElement& element) {
  return element.bbox.w >= kMinMarkExtent && element.bbox.h >= kMinMarkExtent;
}

namespace {

bool Hittable(const DomElement& element) {
  return element.visible && PassesSizeFilter(element);
}

}  // namespace

std::optional<NodeId> HitTest(const Snapshot& snapshot, const PixelPoint& p) {
  std::optional<NodeId> best;
  int best_depth = -1;
  const auto& entries = snapshot.dom.entries();
  for (NodeId id = 0; id < entries.size(); ++id) {
    const auto& entry = entries[id];
    if (!Hittable(entry.element) || !entry.element.bbox.CoversPixel(p)) continue;
    if (entry.depth >= best_depth) {
      best = id;
      best_depth = entry.depth;
    }
  }
  return best;
}

MarkSet MarkElements(const Snapshot& snapshot, int64_t step) {
  const auto points = GridSample(snapshot.viewport_w, snapshot.viewport_h, step);
  const auto& entries = snapshot.dom.entries();

  // Only hittable nodes can win a hit test; scanning them per point is the
  // same computation as HitTest restricted to candidates.
  std::vector<NodeId> candidates;
  for (NodeId id = 0; id < entries.size(); ++id) {
    if (Hittable(entries[id].element)) candidates.push_back(id);
  }

  std::vector<bool> marked(entries.size(), false);
  for (const PixelPoint& p : points) {
    std::optional<NodeId> best;
    int best_depth = -1;
    for (NodeId id : candidates) {
      const auto& entry = entries[id];
      if (!entry.element.bbox.CoversPixel(p)) continue;
      if (entry.depth >= best_depth) {
        best = id;
        best_depth = entry.depth;
      }
    }
    if (best) marked[*best] = true;
  }

  std::vector<NodeId> ids;
  for (NodeId id = 0; id < marked.size(); ++id) {
    if (marked[id]) ids.push_back(id);
  }
  return MarkSet(std::move(ids));
}

namespace {

void Rebuild(const DomTree& dom, NodeId id, const std::vector<bool>& keep,
             DomNode& out, std::vector<NodeId>& source_ids) {
  out.element = dom[id].element;
  source_ids.push_back(id);
  for (NodeId child : dom[id].children) {
    if (!keep[child]) continue;
    out.children.emplace_back();
    Rebuild(dom, child, keep, out.children.back(), source_ids);
  }
}

}  // namespace

PrunedDom PruneDom(const DomTree& dom, const MarkSet& marks) {
  PrunedDom result;
  if (dom.empty()) return result;
  std::vector<bool> keep(dom.size(), false);
  keep[kRootId] = true;
  for (NodeId id : marks.ids()) {
    if (id >= dom.size()) {
      throw PreconditionError("mark " + std::to_string(id) +
                              " is not a node of the snapshot");
    }
    for (std::optional<NodeId> cur = id; cur && !keep[*cur];
         cur = dom[*cur].parent) {
      keep[*cur] = true;
    }
  }
  Rebuild(dom, kRootId, keep, result.root, result.source_ids);
  return result;
}

bool IsInteractiveTag(const std::string& tag) {
  static constexpr std::array<std::string_view, 8> kTags = {
      "a", "button", "input", "select", "textarea", "option", "summary",
      "label"};
  const std::string lower = ToLower(tag);
  return std::find(kTags.begin(), kTags.end(), lower) != kTags.end();
}

bool IsClickable(const DomElement& element) {
  return element.cursor_pointer || element.has_event_listener ||
         IsInteractiveTag(element.tag);
}

namespace {

std::string EscapeAttr(const std::string& value) {
  std::string out;
  for (char c : CollapseWhitespace(value)) {
    if (c == '"') {
      out += "&quot;";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string SerializeDomLine(const DomElement& element, int depth) {
  std::string line(static_cast<size_t>(2 * depth), ' ');
  line += '<';
  line += ToLower(element.tag);
  for (const std::string& key : AttributeWhitelist()) {
    auto it = element.attrs.find(key);
    if (it == element.attrs.end()) continue;
    line += ' ';
    line += key;
    line += "=\"";
    line += EscapeAttr(it->second);
    line += '"';
  }
  line += '>';
  if (element.text) {
    const std::string text = CollapseWhitespace(*element.text);
    if (!text.empty()) {
      line += ' ';
      line += text;
    }
  }
  return line;
}

std::string SerializeDom(const DomTree& tree, NodeId root) {
  std::string out;
  const int base = tree[root].depth;
  for (NodeId id = root; id < tree[root].subtree_end; ++id) {
    if (id != root) out += '\n';
    out += SerializeDomLine(tree[id].element, tree[id].depth - base);
  }
  return out;
}

DomRegion SelectDomRegion(const Snapshot& snapshot, const MarkSet& marks,
                          int64_t token_budget) {
  if (token_budget < 1) throw PreconditionError("token budget must be >= 1");
  const PrunedDom pruned = PruneDom(snapshot, marks);
  const DomTree tree(pruned.root);

  std::optional<NodeId> best;
  size_t best_count = 0;
  int64_t best_area = 0;
  for (NodeId root = 0; root < tree.size(); ++root) {
    const int base = tree[root].depth;
    int64_t cost = 0;
    size_t count = 0;
    for (NodeId id = root; id < tree[root].subtree_end && cost <= token_budget;
         ++id) {
      cost += EstimateTokens(SerializeDomLine(tree[id].element,
                                              tree[id].depth - base));
      if (marks.Contains(pruned.source_ids[id])) ++count;
    }
    if (cost > token_budget) continue;
    const int64_t area = tree[root].element.bbox.Area();
    if (!best || count > best_count ||
        (count == best_count && area < best_area)) {
      best = root;
      best_count = count;
      best_area = area;
    }
  }
  if (!best) throw BudgetError("region budget too small");
  return DomRegion{tree[*best].element.bbox, tree.ToNested(*best), *best,
                   best_count};
}

}  // namespace guikit
