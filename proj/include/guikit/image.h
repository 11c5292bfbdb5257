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

#ifndef GUIKIT_IMAGE_H_
#define GUIKIT_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "guikit/samplegen.h"

namespace guikit {

// Packed 8-bit RGB raster.
struct RgbImage {
  int64_t width = 0;
  int64_t height = 0;
  std::vector<uint8_t> pixels;  // row-major, 3 bytes per pixel

  Rgb At(int64_t x, int64_t y) const {
    const size_t i = static_cast<size_t>((y * width + x) * 3);
    return Rgb{pixels[i], pixels[i + 1], pixels[i + 2]};
  }
};

// nullopt when the file is missing or not a readable PNG.
std::optional<RgbImage> LoadPng(const std::filesystem::path& path);

bool SavePng(const RgbImage& image, const std::filesystem::path& path);

std::vector<Rgb> SampleSurround(const RgbImage& image, const PixelBox& box);

}  // namespace guikit

#endif  // GUIKIT_IMAGE_H_
