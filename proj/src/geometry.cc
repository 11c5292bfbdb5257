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

#include "guikit/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "guikit/errors.h"

namespace guikit {
namespace {

int64_t FloorDiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t CeilDiv(int64_t a, int64_t b) { return -FloorDiv(-a, b); }

// round_half_up(num / den) for num >= 0, den > 0.
int64_t RoundHalfUp(int64_t num, int64_t den) { return (2 * num + den) / (2 * den); }

void CheckGrid(const BlockGrid& grid) {
  if (grid.n_w < 1 || grid.n_h < 1 || grid.w_block < 1 || grid.h_block < 1) {
    throw DomainError("invalid block grid " + grid.ToString());
  }
}

}  // namespace

int64_t PixelBox::PixelLeft() const { return CeilDiv(2 * cx - w, 2); }
int64_t PixelBox::PixelTop() const { return CeilDiv(2 * cy - h, 2); }
int64_t PixelBox::PixelRight() const { return CeilDiv(2 * cx + w, 2); }
int64_t PixelBox::PixelBottom() const { return CeilDiv(2 * cy + h, 2); }

bool PixelBox::CoversPixel(const PixelPoint& p) const {
  return 2 * cx - w <= 2 * p.x && 2 * p.x < 2 * cx + w &&
         2 * cy - h <= 2 * p.y && 2 * p.y < 2 * cy + h;
}

bool PixelBox::ContainsClosed(const PixelPoint& p) const {
  return 2 * cx - w <= 2 * p.x && 2 * p.x <= 2 * cx + w &&
         2 * cy - h <= 2 * p.y && 2 * p.y <= 2 * cy + h;
}

PixelBox PixelBox::FromEdges(int64_t x0, int64_t y0, int64_t x1, int64_t y1) {
  const int64_t w = x1 - x0;
  const int64_t h = y1 - y0;
  return PixelBox{x0 + w / 2, y0 + h / 2, w, h};
}

PixelBox ClipBox(const PixelBox& box, int64_t width, int64_t height) {
  const int64_t x0 = std::clamp<int64_t>(box.PixelLeft(), 0, width);
  const int64_t x1 = std::clamp<int64_t>(box.PixelRight(), 0, width);
  const int64_t y0 = std::clamp<int64_t>(box.PixelTop(), 0, height);
  const int64_t y1 = std::clamp<int64_t>(box.PixelBottom(), 0, height);
  if (x1 <= x0 || y1 <= y0) return PixelBox{0, 0, 0, 0};
  return PixelBox::FromEdges(x0, y0, x1, y1);
}

bool BoxInside(const PixelBox& box, int64_t width, int64_t height) {
  return box.w >= 1 && box.h >= 1 && box.PixelLeft() >= 0 &&
         box.PixelTop() >= 0 && box.PixelRight() <= width &&
         box.PixelBottom() <= height;
}

std::string BlockGrid::ToString() const {
  return std::to_string(n_w) + "x" + std::to_string(n_h);
}

BlockGrid SelectGrid(int64_t image_w, int64_t image_h, int64_t max_blocks,
                     int64_t w_block, int64_t h_block) {
  image_w = std::max<int64_t>(image_w, 1);
  image_h = std::max<int64_t>(image_h, 1);
  max_blocks = std::max<int64_t>(max_blocks, 1);
  constexpr double kTieEpsilon = 1e-12;

  const double image_log_ratio =
      std::log(static_cast<double>(image_w) / static_cast<double>(image_h));
  const double image_area =
      static_cast<double>(image_w) * static_cast<double>(image_h);

  BlockGrid best{1, 1, w_block, h_block};
  double best_diff = std::numeric_limits<double>::infinity();
  for (int64_t count = 1; count <= max_blocks; ++count) {
    for (int64_t n_w = 1; n_w <= count; ++n_w) {
      if (count % n_w != 0) continue;
      const int64_t n_h = count / n_w;
      const double diff = std::abs(
          image_log_ratio -
          std::log(static_cast<double>(n_w) / static_cast<double>(n_h)));
      if (diff < best_diff - kTieEpsilon) {
        best = BlockGrid{n_w, n_h, w_block, h_block};
        best_diff = diff;
      } else if (diff <= best_diff + kTieEpsilon) {
        const double grid_area = static_cast<double>(w_block) *
                                 static_cast<double>(h_block) *
                                 static_cast<double>(count);
        if (count > best.BlockCount() && image_area > 0.5 * grid_area) {
          best = BlockGrid{n_w, n_h, w_block, h_block};
        }
      }
    }
  }
  return best;
}

BlockLocalPoint ToBlockLocal(const PixelPoint& p, const BlockGrid& grid) {
  CheckGrid(grid);
  if (p.x < 0 || p.x >= grid.Width()) {
    throw DomainError("x=" + std::to_string(p.x) + " outside [0, " +
                      std::to_string(grid.Width()) + ") for grid " +
                      grid.ToString());
  }
  if (p.y < 0 || p.y >= grid.Height()) {
    throw DomainError("y=" + std::to_string(p.y) + " outside [0, " +
                      std::to_string(grid.Height()) + ") for grid " +
                      grid.ToString());
  }
  const int64_t bx = p.x / grid.w_block;
  const int64_t by = p.y / grid.h_block;
  return BlockLocalPoint{by * grid.n_w + bx, p.x % grid.w_block,
                         p.y % grid.h_block};
}

PixelPoint FromBlockLocal(const BlockLocalPoint& q, const BlockGrid& grid) {
  CheckGrid(grid);
  if (q.block_index < 0 || q.block_index >= grid.BlockCount()) {
    throw DomainError("block index " + std::to_string(q.block_index) +
                      " outside [0, " + std::to_string(grid.BlockCount()) +
                      ") for grid " + grid.ToString());
  }
  if (q.x < 0 || q.x >= grid.w_block || q.y < 0 || q.y >= grid.h_block) {
    throw DomainError("block-local offset (" + std::to_string(q.x) + ", " +
                      std::to_string(q.y) + ") outside block extent");
  }
  return PixelPoint{q.x + (q.block_index % grid.n_w) * grid.w_block,
                    q.y + (q.block_index / grid.n_w) * grid.h_block};
}

BlockIndex2D BlockIndices2D(int64_t block_index, const BlockGrid& grid) {
  CheckGrid(grid);
  if (block_index < 0 || block_index >= grid.BlockCount()) {
    throw DomainError("block index " + std::to_string(block_index) +
                      " outside [0, " + std::to_string(grid.BlockCount()) +
                      ")");
  }
  return BlockIndex2D{block_index % grid.n_w, block_index / grid.n_w};
}

int64_t NormalizeCoord(int64_t v, int64_t extent) {
  if (extent < 1) throw DomainError("extent must be positive");
  v = std::clamp<int64_t>(v, 0, extent);
  return std::clamp<int64_t>(RoundHalfUp(v * kNormalizedMax, extent), 0,
                             kNormalizedMax);
}

int64_t DenormalizeCoord(int64_t normalized, int64_t extent) {
  if (extent < 1) throw DomainError("extent must be positive");
  normalized = std::clamp<int64_t>(normalized, 0, kNormalizedMax);
  return RoundHalfUp(normalized * extent, kNormalizedMax);
}

}  // namespace guikit
