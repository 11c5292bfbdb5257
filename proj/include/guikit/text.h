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

#ifndef GUIKIT_TEXT_H_
#define GUIKIT_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace guikit {

// Tokenizer-independent length estimate: for every line, ceil(code points / 4)
// plus a fixed overhead of 2. Additive over lines, so the cost of a document
// is the sum of the costs of its lines. The empty string has no lines.
int64_t EstimateTokens(std::string_view text);

inline constexpr int64_t kPerLineTokenOverhead = 2;

// Number of UTF-8 code points; invalid bytes count as one each.
int64_t CountCodePoints(std::string_view text);

std::string Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::string ToUpper(std::string_view s);

// Collapses runs of whitespace (including newlines) to single spaces and
// trims the ends.
std::string CollapseWhitespace(std::string_view s);

std::vector<std::string> SplitLines(std::string_view s);
std::vector<std::string> SplitWhitespace(std::string_view s);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Replaces every "{key}" occurrence for each key in `values`. Unknown
// placeholders are left untouched.
std::string Substitute(
    std::string_view tmpl,
    const std::vector<std::pair<std::string, std::string>>& values);

// Stable 64-bit FNV-1a; used to derive per-item seeds.
uint64_t StableHash(std::string_view s);

// Lower-case hex SHA-256 digest.
std::string Sha256Hex(std::string_view s);

}  // namespace guikit

#endif  // GUIKIT_TEXT_H_
