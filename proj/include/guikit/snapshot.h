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

#ifndef GUIKIT_SNAPSHOT_H_
#define GUIKIT_SNAPSHOT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "guikit/geometry.h"

namespace guikit {

// Attributes retained from capture; anything else is dropped on load.
inline const std::vector<std::string>& AttributeWhitelist() {
  static const std::vector<std::string> kWhitelist = {
      "id", "class", "href", "alt", "aria-label", "placeholder", "type",
      "role"};
  return kWhitelist;
}

// Element payload shared by the nested and flattened tree forms.
struct DomElement {
  std::string tag;
  std::optional<std::string> text;
  PixelBox bbox;
  bool visible = true;
  bool cursor_pointer = false;
  bool has_event_listener = false;
  std::map<std::string, std::string> attrs;

  bool HasText() const { return text.has_value() && !text->empty(); }

  friend bool operator==(const DomElement&, const DomElement&) = default;
};

// Nested value form of a DOM tree, as it appears in interchange files.
struct DomNode {
  DomElement element;
  std::vector<DomNode> children;

  friend bool operator==(const DomNode&, const DomNode&) = default;
};

// Identity of a node within one DomTree: its pre-order (document order)
// position.
using NodeId = uint32_t;
inline constexpr NodeId kRootId = 0;

// Flattened, immutable pre-order view of a DomNode tree.
class DomTree {
 public:
  struct Entry {
    DomElement element;
    std::optional<NodeId> parent;
    std::vector<NodeId> children;
    int depth = 0;
    // One past the last node of this subtree in pre-order.
    NodeId subtree_end = 0;
  };

  DomTree() = default;
  explicit DomTree(const DomNode& root);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](NodeId id) const { return entries_.at(id); }
  const std::vector<Entry>& entries() const { return entries_; }

  bool IsAncestor(NodeId ancestor, NodeId node) const {
    return ancestor < node && node < entries_[ancestor].subtree_end;
  }

  DomNode ToNested(NodeId root = kRootId) const;

 private:
  void Flatten(const DomNode& node, std::optional<NodeId> parent, int depth);

  std::vector<Entry> entries_;
};

struct IconCaption {
  PixelBox bbox;
  std::string caption;

  friend bool operator==(const IconCaption&, const IconCaption&) = default;
};

struct Snapshot {
  std::string id;
  std::string source_url;
  int64_t viewport_w = 0;
  int64_t viewport_h = 0;
  std::string screenshot_ref;
  std::string language;
  DomTree dom;
  std::vector<IconCaption> icons;
};

// Sorted set of node ids within one snapshot.
class MarkSet {
 public:
  MarkSet() = default;
  explicit MarkSet(std::vector<NodeId> ids);

  void Insert(NodeId id);
  bool Contains(NodeId id) const;
  size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<NodeId>& ids() const { return ids_; }

  friend bool operator==(const MarkSet&, const MarkSet&) = default;

 private:
  std::vector<NodeId> ids_;
};

inline constexpr int64_t kDefaultGridStep = 8;
// Elements narrower or shorter than this are never hit or marked.
inline constexpr int64_t kMinMarkExtent = 4;

// Row-major sample points (i*step, j*step) inside the viewport.
std::vector<PixelPoint> GridSample(int64_t viewport_w, int64_t viewport_h,
                                   int64_t step = kDefaultGridStep);

bool PassesSizeFilter(const DomElement& element);

// Deepest visible, size-filtered node covering p; later document order wins
// at equal depth.
std::optional<NodeId> HitTest(const Snapshot& snapshot, const PixelPoint& p);

MarkSet MarkElements(const Snapshot& snapshot, int64_t step = kDefaultGridStep);

struct PrunedDom {
  DomNode root;
  // source_ids[i] is the original id of the pruned node at pre-order i.
  std::vector<NodeId> source_ids;
};

// Keeps marks, their ancestors and the root. The input is not modified.
PrunedDom PruneDom(const DomTree& dom, const MarkSet& marks);

inline PrunedDom PruneDom(const Snapshot& snapshot, const MarkSet& marks) {
  return PruneDom(snapshot.dom, marks);
}

bool IsInteractiveTag(const std::string& tag);
bool IsClickable(const DomElement& element);

// Serializes the subtree at `root` one node per line, two spaces of indent per
// depth relative to `root`:
//   <tag key="value" ...> text
// Attributes follow the whitelist order; text is whitespace-collapsed.
std::string SerializeDom(const DomTree& tree, NodeId root = kRootId);
std::string SerializeDomLine(const DomElement& element, int depth);

struct DomRegion {
  PixelBox box;
  DomNode subtree;
  NodeId pruned_root = kRootId;
  size_t marked_count = 0;
};

// Among subtrees of the pruned DOM whose serialization fits `token_budget`,
// returns the one holding the most marked elements; ties go to the smaller
// box, then document order. Throws BudgetError("region budget too
// small") when nothing fits.
DomRegion SelectDomRegion(const Snapshot& snapshot, const MarkSet& marks,
                          int64_t token_budget);

}  // namespace guikit

#endif  // GUIKIT_SNAPSHOT_H_
