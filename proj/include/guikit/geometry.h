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

#ifndef GUIKIT_GEOMETRY_H_
#define GUIKIT_GEOMETRY_H_

#include <cstdint>
#include <string>

namespace guikit {

// Integer pixel coordinates, origin top-left.
struct PixelPoint {
  int64_t x = 0;
  int64_t y = 0;

  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

// Axis-aligned box in center/extent form.
//
// Integer centers cannot describe odd and even extents symmetrically, so all
// edge tests are done in half-pixel units: the box spans the continuous
// interval [2*cx - w, 2*cx + w] / 2 on the x axis (likewise for y). A pixel
// x is covered when 2*cx - w <= 2*x < 2*cx + w.
struct PixelBox {
  int64_t cx = 0;
  int64_t cy = 0;
  int64_t w = 1;
  int64_t h = 1;

  friend bool operator==(const PixelBox&, const PixelBox&) = default;

  // First covered pixel column / row.
  int64_t PixelLeft() const;
  int64_t PixelTop() const;
  // One past the last covered pixel column / row.
  int64_t PixelRight() const;
  int64_t PixelBottom() const;

  // Half-open pixel coverage, used for hit-testing rendered elements.
  bool CoversPixel(const PixelPoint& p) const;
  // Closed containment in continuous coordinates; edge points count.
  bool ContainsClosed(const PixelPoint& p) const;

  int64_t Area() const { return w * h; }

  // Box covering exactly the pixels [x0, x1) x [y0, y1).
  static PixelBox FromEdges(int64_t x0, int64_t y0, int64_t x1, int64_t y1);
};

// Clip to the pixel rectangle [0, width) x [0, height). Returns a box with
// w == 0 or h == 0 when there is no overlap.
PixelBox ClipBox(const PixelBox& box, int64_t width, int64_t height);

// True when every covered pixel lies inside [0, width) x [0, height).
bool BoxInside(const PixelBox& box, int64_t width, int64_t height);

inline constexpr int64_t kDefaultBlockExtent = 448;
inline constexpr int64_t kDefaultMaxBlocks = 12;

// Tiling of a resized image into n_w x n_h blocks, flattened row-major.
struct BlockGrid {
  int64_t n_w = 1;
  int64_t n_h = 1;
  int64_t w_block = kDefaultBlockExtent;
  int64_t h_block = kDefaultBlockExtent;

  friend bool operator==(const BlockGrid&, const BlockGrid&) = default;

  int64_t BlockCount() const { return n_w * n_h; }
  int64_t Width() const { return n_w * w_block; }
  int64_t Height() const { return n_h * h_block; }
  std::string ToString() const;  // "2x1"
};

// A point expressed as (block sequence index, offset within that block).
struct BlockLocalPoint {
  int64_t block_index = 0;
  int64_t x = 0;
  int64_t y = 0;

  friend bool operator==(const BlockLocalPoint&,
                         const BlockLocalPoint&) = default;
};

// Column/row of a block; these are the indices a 2D block position embedding
// is looked up with.
struct BlockIndex2D {
  int64_t col = 0;
  int64_t row = 0;

  friend bool operator==(const BlockIndex2D&, const BlockIndex2D&) = default;
};

// Picks the n_w x n_h tiling (1 <= n_w * n_h <= max_blocks) whose aspect ratio
// is closest to the image's in log space. On equal distance a grid with more
// blocks replaces the incumbent only when the image area exceeds half of that
// grid's pixel area; otherwise the first candidate in (count, n_w) order is
// kept.
BlockGrid SelectGrid(int64_t image_w, int64_t image_h,
                     int64_t max_blocks = kDefaultMaxBlocks,
                     int64_t w_block = kDefaultBlockExtent,
                     int64_t h_block = kDefaultBlockExtent);

// Throws DomainError naming the offending axis when p is outside the grid.
BlockLocalPoint ToBlockLocal(const PixelPoint& p, const BlockGrid& grid);

// Exact inverse of ToBlockLocal. Throws DomainError for invalid inputs.
PixelPoint FromBlockLocal(const BlockLocalPoint& q, const BlockGrid& grid);

BlockIndex2D BlockIndices2D(int64_t block_index, const BlockGrid& grid);

inline constexpr int64_t kNormalizedMax = 999;

// round_half_up(v * 999 / extent) clamped to [0, 999].
int64_t NormalizeCoord(int64_t v, int64_t extent);

// Inverse of NormalizeCoord up to quantization: round_half_up(n * extent /
// 999).
int64_t DenormalizeCoord(int64_t normalized, int64_t extent);

}  // namespace guikit

#endif  // GUIKIT_GEOMETRY_H_
